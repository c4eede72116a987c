//! Finite dimensional corepresentations: square arrays of multipliers whose
//! coproducts reproduce the matrix product pattern
//! `delta(u_kl) = sum_p u_kp (x) u_pl`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::ap::{ap_test, APVerdict};
use crate::element::FiniteElement;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::model::{GroupData, QuantumGroupModel};
use crate::multiplier::Multiplier;
use crate::poly::MultiPoly;
use crate::scalar::Scalar;
use crate::shape::{BlockIndex, Window};
use crate::tail::ExpPoly;

#[derive(Clone, Debug)]
pub struct Corepresentation {
    size: usize,
    /// row-major entries
    entries: Vec<Multiplier>,
}

impl Corepresentation {
    pub fn new(size: usize, entries: Vec<Multiplier>) -> Result<Corepresentation> {
        if entries.len() != size * size {
            return Err(Error::ShapeMismatch(format!(
                "corepresentation of size {size} needs {} entries, got {}",
                size * size,
                entries.len()
            )));
        }
        Ok(Corepresentation { size, entries })
    }

    /// One-dimensional corepresentation on a single multiplier.
    pub fn group_like(x: Multiplier) -> Corepresentation {
        Corepresentation {
            size: 1,
            entries: vec![x],
        }
    }

    /// Unipotent-at-a-character corepresentation on the rank-one lattice:
    /// `g -> (base (1 + N))^g` with N the nilpotent shift, so the entry at
    /// (k, k+a) is `binom(g, a) base^g`.
    pub fn jordan(model: &QuantumGroupModel, base: Scalar, size: usize) -> Result<Corepresentation> {
        if model.shape().lattice_rank() != Some(1) {
            return Err(Error::ShapeMismatch(
                "jordan corepresentations live on the rank-one lattice".into(),
            ));
        }
        if base.is_zero() {
            return Err(Error::UnsupportedTail("character base must be invertible".into()));
        }
        let shape = model.shape().clone();
        let g = MultiPoly::variable(1, 0);
        // binom(g, a) as a polynomial: g (g-1) ... (g-a+1) / a!
        let mut binomials: Vec<MultiPoly> = vec![MultiPoly::one(1)];
        for a in 1..size {
            let factor = g.sub(&MultiPoly::constant(1, Scalar::from_int(a as i64 - 1)));
            let scaled = binomials[a - 1]
                .mul(&factor)
                .scale(&Scalar::from_ratio(1, a as i64));
            binomials.push(scaled);
        }
        let mut entries = Vec::with_capacity(size * size);
        for k in 0..size {
            for l in 0..size {
                if l < k {
                    entries.push(Multiplier::zero(shape.clone()));
                } else {
                    let tail = ExpPoly::term(vec![base.clone()], binomials[l - k].clone());
                    entries.push(Multiplier::from_tail(shape.clone(), tail)?);
                }
            }
        }
        Ok(Corepresentation { size, entries })
    }

    /// The regular corepresentation of a built-in group model: the group's
    /// regular permutation pattern for a function algebra, the diagonal of
    /// group elements for a group dual. Its coefficients span the algebra.
    pub fn regular(model: &QuantumGroupModel) -> Result<Corepresentation> {
        let shape = model.shape().clone();
        match model.group_data() {
            Some(GroupData::FunctionAlgebra { group }) => {
                let n = group.order();
                let mut entries = Vec::with_capacity(n * n);
                for k in 0..n {
                    for l in 0..n {
                        let g = group.multiply(k, group.inverse(l));
                        let e = FiniteElement::block_unit(
                            &shape,
                            &BlockIndex::named(group.label(g)),
                        )?;
                        entries.push(Multiplier::embed(shape.clone(), &e)?);
                    }
                }
                Ok(Corepresentation { size: n, entries })
            }
            Some(GroupData::GroupDual { group, irreps }) => {
                let n = group.order();
                let mut entries = Vec::with_capacity(n * n);
                for k in 0..n {
                    for l in 0..n {
                        if k != l {
                            entries.push(Multiplier::zero(shape.clone()));
                            continue;
                        }
                        let blocks: BTreeMap<BlockIndex, Mat> = irreps
                            .iter()
                            .map(|r| {
                                (BlockIndex::named(r.name.clone()), r.matrices[k].clone())
                            })
                            .collect();
                        let lam = FiniteElement::new(&shape, blocks)?;
                        entries.push(Multiplier::embed(shape.clone(), &lam)?);
                    }
                }
                Ok(Corepresentation { size: n, entries })
            }
            None => Err(Error::InvalidModel(
                "model carries no group data for a regular corepresentation".into(),
            )),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, row: usize, col: usize) -> &Multiplier {
        &self.entries[row * self.size + col]
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Multiplier)> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, m)| ((i / self.size, i % self.size), m))
    }
}

/// Outcome of the corepresentation check.
#[derive(Clone, Debug)]
pub enum CorepVerdict {
    Valid {
        /// coefficients with their almost-periodicity certificates
        coefficients: Vec<((usize, usize), APVerdict)>,
    },
    Invalid {
        witness: String,
    },
}

impl CorepVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CorepVerdict::Valid { .. })
    }
}

/// Verify `(id (x) delta) u = u_12 u_13` blockwise over `window x window`,
/// then certify every coefficient almost periodic of rank at most the size.
pub fn corep_check(
    model: &Arc<QuantumGroupModel>,
    u: &Corepresentation,
    window: &Window,
) -> Result<CorepVerdict> {
    let shape = model.shape();
    let n = u.size();
    for k in 0..n {
        for l in 0..n {
            for alpha in window.iter() {
                let da = shape.dim(alpha)?;
                for beta in window.iter() {
                    let db = shape.dim(beta)?;
                    let lhs = model.coproduct_block_multiplier(u.entry(k, l), alpha, beta)?;
                    let mut rhs = Mat::zeros(da * db, da * db);
                    for p in 0..n {
                        let a = u.entry(k, p).block(alpha)?;
                        if a.is_zero() {
                            continue;
                        }
                        let b = u.entry(p, l).block(beta)?;
                        if b.is_zero() {
                            continue;
                        }
                        rhs = &rhs + &a.kron(&b);
                    }
                    if lhs != rhs {
                        return Ok(CorepVerdict::Invalid {
                            witness: format!(
                                "delta(u[{k},{l}]) disagrees with (u u)[{k},{l}] at pair \
                                 ({alpha},{beta})"
                            ),
                        });
                    }
                }
            }
        }
    }
    // certificates: every coefficient is almost periodic with rank <= n
    let horizon = window_radius(window).max(4);
    let mut coefficients = Vec::new();
    for ((k, l), entry) in u.entries() {
        if entry.is_zero() {
            continue;
        }
        let verdict = ap_test(model, entry, horizon, None)?;
        match &verdict {
            APVerdict::Yes { rank, .. } if *rank <= n => {}
            APVerdict::Yes { rank, .. } => {
                return Ok(CorepVerdict::Invalid {
                    witness: format!(
                        "coefficient ({k},{l}) has tensor rank {rank} > size {n}"
                    ),
                });
            }
            other => {
                return Ok(CorepVerdict::Invalid {
                    witness: format!(
                        "coefficient ({k},{l}) failed the almost-periodicity \
                         certificate: {other:?}"
                    ),
                });
            }
        }
        coefficients.push(((k, l), verdict));
    }
    Ok(CorepVerdict::Valid { coefficients })
}

fn window_radius(window: &Window) -> u64 {
    window
        .iter()
        .filter_map(|i| i.as_lattice())
        .map(|v| v.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{builtin_model, lattice_model};

    fn chr(model: &QuantumGroupModel, l: i64) -> Multiplier {
        Multiplier::character(model.shape().clone(), vec![Scalar::from_int(l)]).unwrap()
    }

    #[test]
    fn group_like_characters_are_corepresentations() {
        let model = lattice_model(1);
        let u = Corepresentation::group_like(chr(&model, 2));
        let verdict = corep_check(&model, &u, &model.shape().window(3)).unwrap();
        assert!(verdict.is_valid(), "{verdict:?}");
    }

    #[test]
    fn jordan_blocks_validate_with_rank_two_coefficients() {
        let model = lattice_model(1);
        let u = Corepresentation::jordan(&model, Scalar::from_int(2), 2).unwrap();
        // (m+n) 2^(m+n) = m 2^m 2^n + 2^m n 2^n underlies validity
        let verdict = corep_check(&model, &u, &model.shape().window(3)).unwrap();
        let CorepVerdict::Valid { coefficients } = &verdict else {
            panic!("{verdict:?}");
        };
        let off_diagonal = coefficients
            .iter()
            .find(|((k, l), _)| *k == 0 && *l == 1)
            .unwrap();
        assert_eq!(off_diagonal.1.rank(), Some(2));
        // the (0,1) coefficient is n 2^n
        assert_eq!(
            u.entry(0, 1).block(&BlockIndex::int(3)).unwrap().at(0, 0),
            &Scalar::from_int(24)
        );
        assert_eq!(
            u.entry(0, 1).block(&BlockIndex::int(-2)).unwrap().at(0, 0),
            &Scalar::from_ratio(-2, 4)
        );
    }

    #[test]
    fn corrupted_entries_are_rejected_with_a_witness() {
        let model = lattice_model(1);
        let bad = chr(&model, 2).add(&Multiplier::embed(
            model.shape().clone(),
            &FiniteElement::block_unit(model.shape(), &BlockIndex::int(0)).unwrap(),
        ).unwrap());
        let u = Corepresentation::group_like(bad);
        let verdict = corep_check(&model, &u, &model.shape().window(3)).unwrap();
        let CorepVerdict::Invalid { witness } = &verdict else {
            panic!("corrupted corepresentation validated");
        };
        assert!(witness.contains("pair"), "{witness}");
    }

    #[test]
    fn regular_corepresentations_of_builtins_validate() {
        for name in ["C(Z/2)", "C(S3)", "dual(S3)"] {
            let model = builtin_model(name).unwrap();
            let u = Corepresentation::regular(&model).unwrap();
            let verdict = corep_check(&model, &u, &model.default_window()).unwrap();
            assert!(verdict.is_valid(), "{name}: {verdict:?}");
        }
    }

    #[test]
    fn lattice_models_have_no_regular_corepresentation() {
        let model = lattice_model(1);
        assert!(Corepresentation::regular(&model).is_err());
    }
}
