//! Concrete presentations of a discrete quantum group: block shape, fusion
//! and intertwiner data for the comultiplication, the counit block, antipode
//! data and the cointegral.
//!
//! The comultiplication of a block algebra is determined, pair by pair, by a
//! list of fusion summands with multiplicities and an invertible intertwiner
//! conjugating their direct sum into the tensor block. Built-in models cover
//! function algebras of finite groups, duals of finite groups with supplied
//! irreducible representations (fusion and antipode conjugators are derived
//! by solving exact intertwining equations), and free abelian lattices.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use crate::element::FiniteElement;
use crate::error::{Error, Result};
use crate::group::{s3_irreps, FiniteGroup, GroupRep};
use crate::matrix::Mat;
use crate::multiplier::Multiplier;
use crate::scalar::{FieldDescriptor, Scalar};
use crate::shape::{BlockIndex, BlockShape, Window};

/// Fusion data for one ordered pair of blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRule {
    /// Summand blocks with multiplicities, in canonical order.
    pub summands: Vec<(BlockIndex, usize)>,
    /// Invertible conjugator from the direct sum layout into the tensor
    /// block.
    pub intertwiner: Mat,
    pub intertwiner_inv: Mat,
}

impl FusionRule {
    pub fn new(summands: Vec<(BlockIndex, usize)>, intertwiner: Mat) -> Result<FusionRule> {
        let inv = intertwiner
            .inverse()
            .ok_or_else(|| Error::InvalidModel("non-invertible intertwiner".into()))?;
        Ok(FusionRule {
            summands,
            intertwiner,
            intertwiner_inv: inv,
        })
    }

    /// The trivial rule: one summand, multiplicity one, identity conjugator
    /// of the given dimension.
    pub fn single(summand: BlockIndex, dim: usize) -> FusionRule {
        FusionRule {
            summands: vec![(summand, 1)],
            intertwiner: Mat::identity(dim),
            intertwiner_inv: Mat::identity(dim),
        }
    }
}

/// The fusion table: explicit per-pair rules, or lattice addition with a
/// finite set of overrides (overrides exist so that tests can corrupt a
/// model and watch the axiom checker locate the damage).
#[derive(Clone, Debug)]
pub enum FusionTable {
    Explicit(BTreeMap<(BlockIndex, BlockIndex), FusionRule>),
    LatticeAdd {
        rank: usize,
        overrides: BTreeMap<(BlockIndex, BlockIndex), FusionRule>,
    },
}

/// Antipode data: block pairing plus conjugators.
#[derive(Clone, Debug)]
pub enum AntipodeData {
    /// Lattice inversion g -> -g with trivial conjugators.
    LatticeNegate,
    /// Explicit pairing keyed by the source block.
    Explicit(BTreeMap<BlockIndex, AntipodeBlock>),
}

#[derive(Clone, Debug)]
pub struct AntipodeBlock {
    pub partner: BlockIndex,
    pub conjugator: Mat,
    pub conjugator_inv: Mat,
}

pub struct QuantumGroupModel {
    name: String,
    field: FieldDescriptor,
    shape: Arc<BlockShape>,
    fusion: FusionTable,
    trivial_block: BlockIndex,
    antipode: AntipodeData,
    cointegral: FiniteElement,
    group_data: Option<GroupData>,
    pub(crate) haar_cache: [OnceLock<std::result::Result<crate::functional::InvariantFunctional, String>>; 2],
}

impl std::fmt::Debug for QuantumGroupModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuantumGroupModel")
            .field("name", &self.name)
            .field("field", &self.field)
            .field("shape", &self.shape)
            .finish_non_exhaustive()
    }
}

/// Extra structure remembered by the built-in builders; lets generic code
/// construct regular corepresentations.
#[derive(Clone, Debug)]
pub enum GroupData {
    FunctionAlgebra { group: FiniteGroup },
    GroupDual { group: FiniteGroup, irreps: Vec<GroupRep> },
}

impl QuantumGroupModel {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        field: FieldDescriptor,
        shape: Arc<BlockShape>,
        fusion: FusionTable,
        trivial_block: BlockIndex,
        antipode: AntipodeData,
        cointegral: FiniteElement,
        group_data: Option<GroupData>,
    ) -> Result<Arc<QuantumGroupModel>> {
        field.validate()?;
        let model = QuantumGroupModel {
            name: name.into(),
            field,
            shape,
            fusion,
            trivial_block,
            antipode,
            cointegral,
            group_data,
            haar_cache: [OnceLock::new(), OnceLock::new()],
        };
        model.validate_structure()?;
        Ok(Arc::new(model))
    }

    fn validate_structure(&self) -> Result<()> {
        if self.shape.dim(&self.trivial_block)? != 1 {
            return Err(Error::InvalidModel(format!(
                "counit block {} must be one-dimensional",
                self.trivial_block
            )));
        }
        match (&*self.shape, &self.fusion) {
            (BlockShape::Lattice { rank }, FusionTable::LatticeAdd { rank: r, .. }) => {
                if rank != r {
                    return Err(Error::InvalidModel("fusion rank mismatch".into()));
                }
            }
            (BlockShape::Lattice { .. }, FusionTable::Explicit(_)) => {
                return Err(Error::InvalidModel(
                    "lattice shapes need a lattice fusion rule".into(),
                ));
            }
            (BlockShape::Finite(_), FusionTable::LatticeAdd { .. }) => {
                return Err(Error::InvalidModel(
                    "finite shapes need explicit fusion".into(),
                ));
            }
            (BlockShape::Finite(list), FusionTable::Explicit(rules)) => {
                for (alpha, da) in list {
                    for (beta, db) in list {
                        let rule = rules.get(&(alpha.clone(), beta.clone())).ok_or_else(|| {
                            Error::MissingFusion(alpha.to_string(), beta.to_string())
                        })?;
                        let mut total = 0usize;
                        for (iota, mult) in &rule.summands {
                            total += self.shape.dim(iota)? * mult;
                        }
                        if total != da * db {
                            return Err(Error::InvalidModel(format!(
                                "dimension count at ({alpha}, {beta}): {total} != {}",
                                da * db
                            )));
                        }
                        if rule.intertwiner.rows() != da * db {
                            return Err(Error::InvalidModel(format!(
                                "intertwiner size at ({alpha}, {beta})"
                            )));
                        }
                    }
                }
            }
        }
        match (&*self.shape, &self.antipode) {
            (BlockShape::Lattice { .. }, AntipodeData::LatticeNegate) => {}
            (BlockShape::Finite(list), AntipodeData::Explicit(pairing)) => {
                for (index, dim) in list {
                    let entry = pairing.get(index).ok_or_else(|| {
                        Error::InvalidModel(format!("antipode pairing missing block {index}"))
                    })?;
                    if self.shape.dim(&entry.partner)? != *dim {
                        return Err(Error::InvalidModel(format!(
                            "inconsistent antipode pairing at {index}: dimension changes"
                        )));
                    }
                    // the pairing must be an involution at the index level
                    let back = pairing.get(&entry.partner).ok_or_else(|| {
                        Error::InvalidModel(format!(
                            "antipode pairing missing block {}",
                            entry.partner
                        ))
                    })?;
                    if back.partner != *index {
                        return Err(Error::InvalidModel(format!(
                            "inconsistent antipode pairing: {index} -> {} -> {}",
                            entry.partner, back.partner
                        )));
                    }
                }
            }
            _ => {
                return Err(Error::InvalidModel(
                    "antipode data does not match the shape".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn shape(&self) -> &Arc<BlockShape> {
        &self.shape
    }

    pub fn fusion(&self) -> &FusionTable {
        &self.fusion
    }

    pub fn trivial_block(&self) -> &BlockIndex {
        &self.trivial_block
    }

    pub fn antipode_data(&self) -> &AntipodeData {
        &self.antipode
    }

    pub fn cointegral(&self) -> &FiniteElement {
        &self.cointegral
    }

    pub fn group_data(&self) -> Option<&GroupData> {
        self.group_data.as_ref()
    }

    pub fn is_finite(&self) -> bool {
        self.shape.is_finite()
    }

    /// Fusion rule for an ordered pair.
    pub fn fusion_rule(&self, alpha: &BlockIndex, beta: &BlockIndex) -> Result<FusionRule> {
        match &self.fusion {
            FusionTable::Explicit(rules) => rules
                .get(&(alpha.clone(), beta.clone()))
                .cloned()
                .ok_or_else(|| Error::MissingFusion(alpha.to_string(), beta.to_string())),
            FusionTable::LatticeAdd { overrides, .. } => {
                if let Some(rule) = overrides.get(&(alpha.clone(), beta.clone())) {
                    return Ok(rule.clone());
                }
                let a = alpha
                    .as_lattice()
                    .ok_or_else(|| Error::UnknownIndex(alpha.to_string()))?;
                let b = beta
                    .as_lattice()
                    .ok_or_else(|| Error::UnknownIndex(beta.to_string()))?;
                if a.len() != b.len() {
                    return Err(Error::ShapeMismatch("lattice rank mismatch".into()));
                }
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                Ok(FusionRule::single(BlockIndex::Lattice(sum), 1))
            }
        }
    }

    /// When the pair fuses into a single one-dimensional summand, return
    /// that summand without materializing the rule. One-by-one intertwiners
    /// conjugate trivially, so the coproduct block at such a pair is the
    /// summand block itself.
    pub fn fusion_single_target(
        &self,
        alpha: &BlockIndex,
        beta: &BlockIndex,
    ) -> Result<Option<BlockIndex>> {
        match &self.fusion {
            FusionTable::LatticeAdd { overrides, .. } => {
                if let Some(rule) = overrides.get(&(alpha.clone(), beta.clone())) {
                    if rule.summands.len() == 1 && rule.summands[0].1 == 1 {
                        return Ok(Some(rule.summands[0].0.clone()));
                    }
                    return Ok(None);
                }
                let a = alpha
                    .as_lattice()
                    .ok_or_else(|| Error::UnknownIndex(alpha.to_string()))?;
                let b = beta
                    .as_lattice()
                    .ok_or_else(|| Error::UnknownIndex(beta.to_string()))?;
                Ok(Some(BlockIndex::Lattice(
                    a.iter().zip(b).map(|(x, y)| x + y).collect(),
                )))
            }
            FusionTable::Explicit(rules) => {
                let rule = rules
                    .get(&(alpha.clone(), beta.clone()))
                    .ok_or_else(|| Error::MissingFusion(alpha.to_string(), beta.to_string()))?;
                if rule.summands.len() == 1
                    && rule.summands[0].1 == 1
                    && self.shape.dim(alpha)? * self.shape.dim(beta)? == 1
                {
                    Ok(Some(rule.summands[0].0.clone()))
                } else {
                    Ok(None)
                }
            }
        }
    }

    /// Blocks beta such that `iota` appears among the fusion summands of
    /// (alpha, beta); used when assembling invariance equations.
    pub fn left_complements(&self, alpha: &BlockIndex, iota: &BlockIndex) -> Result<Vec<BlockIndex>> {
        match &self.fusion {
            FusionTable::Explicit(rules) => Ok(rules
                .iter()
                .filter(|((a, _), rule)| {
                    a == alpha && rule.summands.iter().any(|(s, _)| s == iota)
                })
                .map(|((_, b), _)| b.clone())
                .collect()),
            FusionTable::LatticeAdd { overrides, .. } => {
                let a = alpha
                    .as_lattice()
                    .ok_or_else(|| Error::UnknownIndex(alpha.to_string()))?;
                let s = iota
                    .as_lattice()
                    .ok_or_else(|| Error::UnknownIndex(iota.to_string()))?;
                let diff: Vec<i64> = s.iter().zip(a).map(|(x, y)| x - y).collect();
                let mut out = vec![BlockIndex::Lattice(diff)];
                for ((oa, ob), rule) in overrides {
                    if oa == alpha && rule.summands.iter().any(|(x, _)| x == iota) {
                        if !out.contains(ob) {
                            out.push(ob.clone());
                        }
                    } else if oa == alpha {
                        // the default rule at this pair is shadowed
                        out.retain(|b| {
                            !(b == ob
                                && !rule.summands.iter().any(|(x, _)| x == iota))
                        });
                    }
                }
                Ok(out)
            }
        }
    }

    /// Mirror of [`Self::left_complements`]: blocks alpha with `iota` among
    /// the summands of (alpha, beta).
    pub fn right_complements(&self, beta: &BlockIndex, iota: &BlockIndex) -> Result<Vec<BlockIndex>> {
        match &self.fusion {
            FusionTable::Explicit(rules) => Ok(rules
                .iter()
                .filter(|((_, b), rule)| {
                    b == beta && rule.summands.iter().any(|(s, _)| s == iota)
                })
                .map(|((a, _), _)| a.clone())
                .collect()),
            FusionTable::LatticeAdd { overrides, .. } => {
                let b = beta
                    .as_lattice()
                    .ok_or_else(|| Error::UnknownIndex(beta.to_string()))?;
                let s = iota
                    .as_lattice()
                    .ok_or_else(|| Error::UnknownIndex(iota.to_string()))?;
                let diff: Vec<i64> = s.iter().zip(b).map(|(x, y)| x - y).collect();
                let mut out = vec![BlockIndex::Lattice(diff)];
                for ((oa, ob), rule) in overrides {
                    if ob == beta && rule.summands.iter().any(|(x, _)| x == iota) {
                        if !out.contains(oa) {
                            out.push(oa.clone());
                        }
                    } else if ob == beta {
                        out.retain(|a| {
                            !(a == oa
                                && !rule.summands.iter().any(|(x, _)| x == iota))
                        });
                    }
                }
                Ok(out)
            }
        }
    }

    /// The comultiplication block at an ordered pair, for any block-valued
    /// assignment: conjugate the direct sum of the summand blocks by the
    /// intertwiner.
    pub fn coproduct_block_with(
        &self,
        get: &mut dyn FnMut(&BlockIndex) -> Result<Mat>,
        alpha: &BlockIndex,
        beta: &BlockIndex,
    ) -> Result<Mat> {
        if let Some(target) = self.fusion_single_target(alpha, beta)? {
            if self.shape.dim(&target)? == 1 {
                return get(&target);
            }
        }
        let rule = self.fusion_rule(alpha, beta)?;
        let total = self.shape.dim(alpha)? * self.shape.dim(beta)?;
        let mut direct_sum = Mat::zeros(total, total);
        let mut offset = 0usize;
        for (iota, mult) in &rule.summands {
            let block = get(iota)?;
            let d = self.shape.dim(iota)?;
            for _ in 0..*mult {
                for r in 0..d {
                    for c in 0..d {
                        direct_sum.set(offset + r, offset + c, block.at(r, c).clone());
                    }
                }
                offset += d;
            }
        }
        Ok(&(&rule.intertwiner * &direct_sum) * &rule.intertwiner_inv)
    }

    /// Coproduct block of a finite element.
    pub fn coproduct_block(
        &self,
        a: &FiniteElement,
        alpha: &BlockIndex,
        beta: &BlockIndex,
    ) -> Result<Mat> {
        let shape = self.shape.clone();
        self.coproduct_block_with(&mut |i| a.block(&shape, i), alpha, beta)
    }

    /// Coproduct block of a multiplier (the extension of the
    /// comultiplication to the multiplier algebra).
    pub fn coproduct_block_multiplier(
        &self,
        m: &Multiplier,
        alpha: &BlockIndex,
        beta: &BlockIndex,
    ) -> Result<Mat> {
        self.coproduct_block_with(&mut |i| m.block(i), alpha, beta)
    }

    /// The counit: the scalar a carries on the trivial block.
    pub fn counit(&self, a: &FiniteElement) -> Scalar {
        a.stored_block(&self.trivial_block)
            .map(|m| m.at(0, 0).clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn counit_multiplier(&self, m: &Multiplier) -> Result<Scalar> {
        Ok(m.block(&self.trivial_block)?.at(0, 0).clone())
    }

    /// Antipode of a finite element.
    pub fn antipode_element(&self, a: &FiniteElement) -> FiniteElement {
        let mut blocks = BTreeMap::new();
        for (index, mat) in a.blocks() {
            let (partner, transformed) = self.antipode_block(index, mat);
            blocks.insert(partner, transformed);
        }
        FiniteElement::new(&self.shape, blocks).expect("antipode preserves dimensions")
    }

    fn antipode_block(&self, index: &BlockIndex, mat: &Mat) -> (BlockIndex, Mat) {
        match &self.antipode {
            AntipodeData::LatticeNegate => {
                let v = index.as_lattice().expect("lattice antipode on lattice index");
                let neg: Vec<i64> = v.iter().map(|x| -x).collect();
                (BlockIndex::Lattice(neg), mat.clone())
            }
            AntipodeData::Explicit(pairing) => {
                let entry = pairing.get(index).expect("antipode pairing is total");
                let out = &(&entry.conjugator * &mat.transpose()) * &entry.conjugator_inv;
                (entry.partner.clone(), out)
            }
        }
    }

    /// Antipode of a multiplier; the tail transforms by argument inversion
    /// on lattice models, and finite models are fully explicit.
    pub fn antipode_multiplier(&self, m: &Multiplier) -> Result<Multiplier> {
        match &self.antipode {
            AntipodeData::LatticeNegate => {
                let tail = match m.tail() {
                    crate::tail::TailRule::ExpPoly(f) => f.negate_argument(),
                    crate::tail::TailRule::Zero => {
                        crate::tail::ExpPoly::zero(self.shape.lattice_rank().unwrap())
                    }
                    other => {
                        return Err(Error::UnsupportedTail(format!(
                            "antipode of tail {other:?} on a lattice model"
                        )))
                    }
                };
                let mut explicit = BTreeMap::new();
                for (index, mat) in m.explicit() {
                    let (partner, out) = self.antipode_block(index, mat);
                    explicit.insert(partner, out);
                }
                Multiplier::new(
                    self.shape.clone(),
                    explicit,
                    crate::tail::TailRule::ExpPoly(tail),
                )
            }
            AntipodeData::Explicit(_) => {
                let mut explicit = BTreeMap::new();
                for (index, mat) in m.explicit() {
                    let (partner, out) = self.antipode_block(index, mat);
                    explicit.insert(partner, out);
                }
                Multiplier::new(self.shape.clone(), explicit, crate::tail::TailRule::Zero)
            }
        }
    }

    /// Pairs (alpha, beta) within `horizon x horizon` whose fusion summands
    /// meet `support`; outside this set the coproduct of anything supported
    /// in `support` vanishes.
    pub fn coproduct_support_pairs(
        &self,
        support: &Window,
        horizon: &Window,
    ) -> Result<Vec<(BlockIndex, BlockIndex)>> {
        let mut out = Vec::new();
        match &self.fusion {
            FusionTable::Explicit(rules) => {
                for ((a, b), rule) in rules {
                    if horizon.contains(a)
                        && horizon.contains(b)
                        && rule.summands.iter().any(|(s, _)| support.contains(s))
                    {
                        out.push((a.clone(), b.clone()));
                    }
                }
            }
            FusionTable::LatticeAdd { overrides, .. } => {
                for s in support.iter() {
                    let sv = s.as_lattice().unwrap();
                    for a in horizon.iter() {
                        let av = a.as_lattice().unwrap();
                        let bv: Vec<i64> = sv.iter().zip(av).map(|(x, y)| x - y).collect();
                        let b = BlockIndex::Lattice(bv);
                        if horizon.contains(&b)
                            && !overrides.contains_key(&(a.clone(), b.clone()))
                            && !out.contains(&(a.clone(), b.clone()))
                        {
                            out.push((a.clone(), b.clone()));
                        }
                    }
                }
                for ((a, b), rule) in overrides {
                    if horizon.contains(a)
                        && horizon.contains(b)
                        && rule.summands.iter().any(|(s, _)| support.contains(s))
                        && !out.contains(&(a.clone(), b.clone()))
                    {
                        out.push((a.clone(), b.clone()));
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Default probe window: everything for finite models, radius 4 for
    /// lattices.
    pub fn default_window(&self) -> Window {
        match &*self.shape {
            BlockShape::Finite(_) => self.shape.window(0),
            BlockShape::Lattice { .. } => self.shape.window(4),
        }
    }
}

// ---------------------------------------------------------------------------
// built-in builders
// ---------------------------------------------------------------------------

/// The free abelian lattice model: one-dimensional blocks indexed by Z^rank,
/// comultiplication pulled back along addition, counit at the origin,
/// antipode by inversion, cointegral the point mass at the origin.
pub fn lattice_model(rank: usize) -> Arc<QuantumGroupModel> {
    let shape = Arc::new(BlockShape::Lattice { rank });
    let origin = BlockIndex::Lattice(vec![0; rank]);
    let cointegral = FiniteElement::block_unit(&shape, &origin).unwrap();
    let name = if rank == 1 { "Z".to_string() } else { format!("Z^{rank}") };
    QuantumGroupModel::new(
        name,
        FieldDescriptor::Rational,
        shape,
        FusionTable::LatticeAdd {
            rank,
            overrides: BTreeMap::new(),
        },
        origin,
        AntipodeData::LatticeNegate,
        cointegral,
        None,
    )
    .expect("lattice model is structurally valid")
}

/// Lattice model with one corrupted fusion pair; the axiom checker should
/// locate the damage.
pub fn corrupted_lattice_model(
    rank: usize,
    pair: (Vec<i64>, Vec<i64>),
    wrong_sum: Vec<i64>,
) -> Arc<QuantumGroupModel> {
    let shape = Arc::new(BlockShape::Lattice { rank });
    let origin = BlockIndex::Lattice(vec![0; rank]);
    let cointegral = FiniteElement::block_unit(&shape, &origin).unwrap();
    let mut overrides = BTreeMap::new();
    overrides.insert(
        (BlockIndex::Lattice(pair.0), BlockIndex::Lattice(pair.1)),
        FusionRule::single(BlockIndex::Lattice(wrong_sum), 1),
    );
    QuantumGroupModel::new(
        "Z-corrupted",
        FieldDescriptor::Rational,
        shape,
        FusionTable::LatticeAdd { rank, overrides },
        origin,
        AntipodeData::LatticeNegate,
        cointegral,
        None,
    )
    .expect("corrupted lattice model is structurally valid")
}

/// The function algebra of a finite group: one-dimensional blocks indexed by
/// group elements, comultiplication pulled back along the group law.
pub fn function_algebra(name: impl Into<String>, group: FiniteGroup) -> Arc<QuantumGroupModel> {
    let n = group.order();
    let blocks: Vec<(BlockIndex, usize)> = group
        .labels()
        .iter()
        .map(|l| (BlockIndex::named(l.clone()), 1))
        .collect();
    let shape = Arc::new(BlockShape::Finite(blocks));
    let mut rules = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let prod = group.multiply(i, j);
            rules.insert(
                (
                    BlockIndex::named(group.label(i)),
                    BlockIndex::named(group.label(j)),
                ),
                FusionRule::single(BlockIndex::named(group.label(prod)), 1),
            );
        }
    }
    let mut pairing = BTreeMap::new();
    for i in 0..n {
        pairing.insert(
            BlockIndex::named(group.label(i)),
            AntipodeBlock {
                partner: BlockIndex::named(group.label(group.inverse(i))),
                conjugator: Mat::identity(1),
                conjugator_inv: Mat::identity(1),
            },
        );
    }
    let identity_block = BlockIndex::named(group.label(group.identity()));
    let cointegral = FiniteElement::block_unit(&shape, &identity_block).unwrap();
    QuantumGroupModel::new(
        name,
        FieldDescriptor::Rational,
        shape,
        FusionTable::Explicit(rules),
        identity_block,
        AntipodeData::Explicit(pairing),
        cointegral,
        Some(GroupData::FunctionAlgebra { group }),
    )
    .expect("function algebra is structurally valid")
}

/// The dual of a finite group: blocks are the supplied irreducible
/// representations, fusion rules and intertwiners are derived by solving the
/// exact intertwining equations, the antipode conjugators likewise.
pub fn group_dual(
    name: impl Into<String>,
    field: FieldDescriptor,
    group: FiniteGroup,
    irreps: Vec<GroupRep>,
) -> Result<Arc<QuantumGroupModel>> {
    let n = group.order();
    for rep in &irreps {
        rep.validate(&group)?;
    }
    let total: usize = irreps.iter().map(|r| r.dim() * r.dim()).sum();
    if total != n {
        return Err(Error::InvalidModel(format!(
            "dimension count: sum of squared irrep dimensions is {total}, group order is {n}"
        )));
    }
    // pairwise distinctness via character orthogonality
    for i in 0..irreps.len() {
        for j in (i + 1)..irreps.len() {
            let mut inner = Scalar::zero();
            for g in 0..n {
                inner = inner.add(&irreps[i].character(g).mul(&irreps[j].character(g).conj()));
            }
            if !inner.is_zero() {
                return Err(Error::InvalidModel(format!(
                    "representations {} and {} are equivalent",
                    irreps[i].name, irreps[j].name
                )));
            }
        }
    }
    let trivial_position = irreps
        .iter()
        .position(|r| r.dim() == 1 && (0..n).all(|g| r.matrices[g].at(0, 0).is_one()))
        .ok_or_else(|| Error::InvalidModel("no trivial representation supplied".into()))?;

    let blocks: Vec<(BlockIndex, usize)> = irreps
        .iter()
        .map(|r| (BlockIndex::named(r.name.clone()), r.dim()))
        .collect();
    let shape = Arc::new(BlockShape::Finite(blocks));

    // fusion: decompose alpha (x) beta over the irreps
    let mut rules = BTreeMap::new();
    for alpha in &irreps {
        for beta in &irreps {
            let rule = derive_fusion_rule(&group, &irreps, alpha, beta)?;
            rules.insert(
                (
                    BlockIndex::named(alpha.name.clone()),
                    BlockIndex::named(beta.name.clone()),
                ),
                rule,
            );
        }
    }

    // antipode: partner = the irrep equivalent to the contragredient
    let mut pairing = BTreeMap::new();
    for rep in &irreps {
        let (partner, conjugator) = derive_antipode_block(&group, &irreps, rep)?;
        let conjugator_inv = conjugator
            .inverse()
            .ok_or_else(|| Error::InvalidModel("inconsistent antipode pairing".into()))?;
        pairing.insert(
            BlockIndex::named(rep.name.clone()),
            AntipodeBlock {
                partner,
                conjugator,
                conjugator_inv,
            },
        );
    }

    let trivial_block = BlockIndex::named(irreps[trivial_position].name.clone());
    let cointegral = FiniteElement::block_unit(&shape, &trivial_block).unwrap();
    QuantumGroupModel::new(
        name,
        field,
        shape,
        FusionTable::Explicit(rules),
        trivial_block,
        AntipodeData::Explicit(pairing),
        cointegral,
        Some(GroupData::GroupDual { group, irreps }),
    )
}

/// Basis of the space of intertwiners `W` with `big(g) W = W small(g)` for
/// all group elements; deterministic, from the null space of the stacked
/// system.
fn intertwiner_basis(
    group: &FiniteGroup,
    big: &dyn Fn(usize) -> Mat,
    big_dim: usize,
    small: &GroupRep,
) -> Vec<Mat> {
    let n = group.order();
    let sd = small.dim();
    let unknowns = big_dim * sd;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in 0..n {
        let bg = big(g);
        let sg = &small.matrices[g];
        // (bg W - W sg)[r][c] = sum_k bg[r][k] W[k][c] - sum_k W[r][k] sg[k][c]
        for r in 0..big_dim {
            for c in 0..sd {
                let mut row = vec![Scalar::zero(); unknowns];
                for k in 0..big_dim {
                    let coeff = bg.at(r, k).clone();
                    if !coeff.is_zero() {
                        row[k * sd + c] = row[k * sd + c].add(&coeff);
                    }
                }
                for k in 0..sd {
                    let coeff = sg.at(k, c).clone();
                    if !coeff.is_zero() {
                        row[r * sd + k] = row[r * sd + k].sub(&coeff);
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = Mat::from_rows(rows);
    system
        .nullspace()
        .into_iter()
        .map(|v| Mat::from_fn(big_dim, sd, |r, c| v[r * sd + c].clone()))
        .collect()
}

fn derive_fusion_rule(
    group: &FiniteGroup,
    irreps: &[GroupRep],
    alpha: &GroupRep,
    beta: &GroupRep,
) -> Result<FusionRule> {
    let n = group.order();
    let tensor_dim = alpha.dim() * beta.dim();
    let tensor = |g: usize| -> Mat { alpha.matrices[g].kron(&beta.matrices[g]) };
    let mut summands = Vec::new();
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    for iota in irreps {
        // multiplicity from characters
        let mut inner = Scalar::zero();
        for g in 0..n {
            inner = inner.add(
                &alpha
                    .character(g)
                    .mul(&beta.character(g))
                    .mul(&iota.character(g).conj()),
            );
        }
        let mult_scalar = inner.div(&Scalar::from_int(n as i64));
        let mult = match mult_scalar.as_rational() {
            Some(r) if r.is_integer() && !num::traits::Signed::is_negative(r) => {
                use num::ToPrimitive;
                r.to_integer().to_usize().unwrap()
            }
            _ => {
                return Err(Error::InvalidModel(format!(
                    "non-integral multiplicity of {} in {} (x) {}",
                    iota.name, alpha.name, beta.name
                )))
            }
        };
        if mult == 0 {
            continue;
        }
        let homs = intertwiner_basis(group, &tensor, tensor_dim, iota);
        if homs.len() != mult {
            return Err(Error::InvalidModel(format!(
                "intertwiner space of {} in {} (x) {} has dimension {}, characters predict {mult}",
                iota.name,
                alpha.name,
                beta.name,
                homs.len()
            )));
        }
        summands.push((BlockIndex::named(iota.name.clone()), mult));
        for w in homs {
            for c in 0..w.cols() {
                columns.push(w.col(c));
            }
        }
    }
    if columns.len() != tensor_dim {
        return Err(Error::InvalidModel(format!(
            "dimension count in {} (x) {}: {} != {tensor_dim}",
            alpha.name,
            beta.name,
            columns.len()
        )));
    }
    let u = Mat::from_fn(tensor_dim, tensor_dim, |r, c| columns[c][r].clone());
    FusionRule::new(summands, u)
}

fn derive_antipode_block(
    group: &FiniteGroup,
    irreps: &[GroupRep],
    rep: &GroupRep,
) -> Result<(BlockIndex, Mat)> {
    let n = group.order();
    // contragredient: g -> rep(g^{-1})^T
    let contragredient = |g: usize| -> Mat { rep.matrices[group.inverse(g)].transpose() };
    // find the partner by characters: chi_partner(g) = chi_rep(g^{-1})
    let partner = irreps
        .iter()
        .find(|sigma| {
            (0..n).all(|g| sigma.character(g) == rep.character(group.inverse(g)))
        })
        .ok_or_else(|| {
            Error::InvalidModel(format!(
                "inconsistent antipode pairing: no contragredient partner for {}",
                rep.name
            ))
        })?;
    // R with partner(g) R = R contragredient(g)
    let contra_rep = GroupRep {
        name: format!("{}~", rep.name),
        matrices: (0..n).map(contragredient).collect(),
    };
    let big = |g: usize| -> Mat { partner.matrices[g].clone() };
    let homs = intertwiner_basis(group, &big, partner.dim(), &contra_rep);
    let r = homs
        .into_iter()
        .find(|m| m.inverse().is_some())
        .ok_or_else(|| {
            Error::InvalidModel(format!(
                "inconsistent antipode pairing: no invertible conjugator for {}",
                rep.name
            ))
        })?;
    Ok((BlockIndex::named(partner.name.clone()), r))
}

/// The dual of the symmetric group on three letters, blocks (1, 1, 2), over
/// the quadratic extension by the square root of three (the standard block
/// is realized orthogonally there).
pub fn s3_dual() -> Arc<QuantumGroupModel> {
    let group = FiniteGroup::symmetric_3();
    let irreps = s3_irreps(&group);
    group_dual(
        "dual(S3)",
        FieldDescriptor::QuadraticTower { radicands: vec![3] },
        group,
        irreps,
    )
    .expect("S3 dual is structurally valid")
}

/// The dual of a cyclic group: one block per character, over the cyclotomic
/// field of the group order (rational for orders one and two).
pub fn cyclic_dual(n: usize) -> Result<Arc<QuantumGroupModel>> {
    let group = FiniteGroup::cyclic(n);
    let field = if n <= 2 {
        FieldDescriptor::Rational
    } else {
        FieldDescriptor::Cyclotomic { order: n as u32 }
    };
    let irreps: Vec<GroupRep> = (0..n)
        .map(|j| GroupRep {
            name: format!("x{j}"),
            matrices: (0..n)
                .map(|k| Mat::from_scalar(Scalar::root_power(n as u32, (j * k) as i64)))
                .collect(),
        })
        .collect();
    group_dual(format!("dual(Z/{n})"), field, group, irreps)
}

/// Look up a built-in model by name.
///
/// Accepted names: `Z`, `Z^k` (for example `Z^2`), `C(Z/n)`, `C(S3)`,
/// `dual(S3)`, `dual(Z/n)`.
pub fn builtin_model(name: &str) -> Result<Arc<QuantumGroupModel>> {
    let trimmed = name.trim();
    if trimmed == "Z" {
        return Ok(lattice_model(1));
    }
    if let Some(rank) = trimmed.strip_prefix("Z^") {
        let rank: usize = rank
            .parse()
            .map_err(|_| Error::InvalidModel(format!("bad lattice rank in {trimmed}")))?;
        if rank == 0 || rank > 4 {
            return Err(Error::InvalidModel(format!(
                "lattice rank {rank} out of the supported range 1..=4"
            )));
        }
        return Ok(lattice_model(rank));
    }
    if let Some(inner) = trimmed
        .strip_prefix("C(")
        .and_then(|s| s.strip_suffix(')'))
    {
        if inner == "S3" {
            return Ok(function_algebra("C(S3)", FiniteGroup::symmetric_3()));
        }
        if let Some(n) = inner.strip_prefix("Z/") {
            let n: usize = n
                .parse()
                .map_err(|_| Error::InvalidModel(format!("bad cyclic order in {trimmed}")))?;
            if n == 0 {
                return Err(Error::InvalidModel("cyclic order must be positive".into()));
            }
            return Ok(function_algebra(
                format!("C(Z/{n})"),
                FiniteGroup::cyclic(n),
            ));
        }
    }
    if let Some(inner) = trimmed
        .strip_prefix("dual(")
        .and_then(|s| s.strip_suffix(')'))
    {
        if inner == "S3" {
            return Ok(s3_dual());
        }
        if let Some(n) = inner.strip_prefix("Z/") {
            let n: usize = n
                .parse()
                .map_err(|_| Error::InvalidModel(format!("bad cyclic order in {trimmed}")))?;
            if n == 0 {
                return Err(Error::InvalidModel("cyclic order must be positive".into()));
            }
            return cyclic_dual(n);
        }
    }
    Err(Error::InvalidModel(format!("unknown builtin model {trimmed}")))
}
