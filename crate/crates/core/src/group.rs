//! Finite groups presented by Cayley tables, with exact irreducible
//! representation data for the built-in groups.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    /// mul[i][j] = index of g_i * g_j
    mul: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates the table: associativity, two-sided identity, inverses.
    pub fn from_table(labels: Vec<String>, mul: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidModel("empty group".into()));
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidModel("Cayley table is not square".into()));
        }
        if mul.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidModel("Cayley table entry out of range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| mul[e][i] == i && mul[i][e] == i))
            .ok_or_else(|| Error::InvalidModel("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            inverse[i] = (0..n)
                .find(|&j| mul[i][j] == identity && mul[j][i] == identity)
                .ok_or_else(|| Error::InvalidModel(format!("{} has no inverse", labels[i])))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidModel(format!(
                            "associativity fails at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            labels,
            mul,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        assert!(n >= 1);
        let labels = (0..n).map(|i| i.to_string()).collect();
        let mul = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        FiniteGroup::from_table(labels, mul).expect("cyclic table is a group")
    }

    /// The symmetric group on three letters. Elements are the identity, the
    /// three transpositions and the two 3-cycles, built from permutations.
    pub fn symmetric_3() -> FiniteGroup {
        // permutations as images of (0,1,2)
        let perms: Vec<(&str, [usize; 3])> = vec![
            ("e", [0, 1, 2]),
            ("s1", [1, 0, 2]), // swaps 0,1
            ("s2", [2, 1, 0]), // swaps 0,2
            ("s3", [0, 2, 1]), // swaps 1,2
            ("r1", [1, 2, 0]), // 0->1->2->0
            ("r2", [2, 0, 1]),
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
            // (p*q)(x) = p(q(x))
            [p[q[0]], p[q[1]], p[q[2]]]
        };
        let n = perms.len();
        let mut mul = vec![vec![0usize; n]; n];
        for i in 0..n {
            for j in 0..n {
                let prod = compose(&perms[i].1, &perms[j].1);
                mul[i][j] = perms.iter().position(|(_, p)| *p == prod).unwrap();
            }
        }
        let labels = perms.iter().map(|(l, _)| l.to_string()).collect();
        FiniteGroup::from_table(labels, mul).expect("S3 table is a group")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.mul[i][j]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }
}

/// An exact matrix representation: one matrix per group element, in label
/// order.
#[derive(Clone, Debug)]
pub struct GroupRep {
    pub name: String,
    pub matrices: Vec<Mat>,
}

impl GroupRep {
    pub fn dim(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn character(&self, element: usize) -> Scalar {
        self.matrices[element].trace()
    }

    /// Homomorphism check against the group table.
    pub fn validate(&self, group: &FiniteGroup) -> Result<()> {
        let n = group.order();
        if self.matrices.len() != n {
            return Err(Error::InvalidModel(format!(
                "representation {} has {} matrices for a group of order {n}",
                self.name,
                self.matrices.len()
            )));
        }
        let d = self.dim();
        if self
            .matrices
            .iter()
            .any(|m| m.rows() != d || m.cols() != d)
        {
            return Err(Error::InvalidModel(format!(
                "representation {} has inconsistent dimensions",
                self.name
            )));
        }
        if self.matrices[group.identity()] != Mat::identity(d) {
            return Err(Error::InvalidModel(format!(
                "representation {} does not send the identity to the identity",
                self.name
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = &self.matrices[i] * &self.matrices[j];
                if lhs != self.matrices[group.multiply(i, j)] {
                    return Err(Error::InvalidModel(format!(
                        "representation {} is not a homomorphism at ({}, {})",
                        self.name,
                        group.label(i),
                        group.label(j)
                    )));
                }
            }
        }
        // irreducibility: sum over g of |chi(g)|^2 equals the group order
        let mut norm = Scalar::zero();
        for g in 0..n {
            let chi = self.character(g);
            norm = norm.add(&chi.mul(&chi.conj()));
        }
        if norm != Scalar::from_int(n as i64) {
            return Err(Error::InvalidModel(format!(
                "representation {} is not irreducible (character norm {norm})",
                self.name
            )));
        }
        Ok(())
    }
}

/// The three irreducible representations of S3: trivial, sign, and the
/// two-dimensional standard representation.
///
/// The standard representation is realized orthogonally (dihedral rotations
/// and reflections) over the quadratic extension by the square root of
/// three. Orthogonality matters: the block algebras carry their involution
/// as the entrywise conjugate transpose, and that implements the group
/// involution exactly when the representing matrices are unitary.
pub fn s3_irreps(group: &FiniteGroup) -> Vec<GroupRep> {
    let perm_of = |label: &str| -> [usize; 3] {
        match label {
            "e" => [0, 1, 2],
            "s1" => [1, 0, 2],
            "s2" => [2, 1, 0],
            "s3" => [0, 2, 1],
            "r1" => [1, 2, 0],
            "r2" => [2, 0, 1],
            _ => unreachable!("unknown S3 label"),
        }
    };
    let sign_of = |p: &[usize; 3]| -> i64 {
        let mut inversions = 0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let half_root3 = Scalar::tower_root(&[3], 0).mul(&Scalar::from_ratio(1, 2));
    let minus_half = Scalar::from_ratio(-1, 2);
    // rotation by a third of a turn and the reflection fixing the first axis
    let rotation = Mat::from_rows(vec![
        vec![minus_half.clone(), half_root3.neg()],
        vec![half_root3.clone(), minus_half.clone()],
    ]);
    let reflection = Mat::from_rows(vec![
        vec![Scalar::one(), Scalar::zero()],
        vec![Scalar::zero(), Scalar::from_int(-1)],
    ]);
    let std_matrix = |label: &str| -> Mat {
        match label {
            "e" => Mat::identity(2),
            "r1" => rotation.clone(),
            "r2" => &rotation * &rotation,
            "s1" => reflection.clone(),
            "s3" => &reflection * &rotation,
            "s2" => &reflection * &(&rotation * &rotation),
            _ => unreachable!("unknown S3 label"),
        }
    };
    let mut triv = Vec::new();
    let mut sgn = Vec::new();
    let mut std_rep = Vec::new();
    for label in group.labels() {
        let p = perm_of(label);
        triv.push(Mat::identity(1));
        sgn.push(Mat::from_scalar(Scalar::from_int(sign_of(&p))));
        std_rep.push(std_matrix(label));
    }
    vec![
        GroupRep {
            name: "triv".into(),
            matrices: triv,
        },
        GroupRep {
            name: "sgn".into(),
            matrices: sgn,
        },
        GroupRep {
            name: "std".into(),
            matrices: std_rep,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_a_group_of_order_six() {
        let g = FiniteGroup::symmetric_3();
        assert_eq!(g.order(), 6);
        let s1 = g.index_of("s1").unwrap();
        let r1 = g.index_of("r1").unwrap();
        assert_eq!(g.inverse(s1), s1);
        assert_eq!(g.label(g.inverse(r1)), "r2");
        // s1 r1 != r1 s1 (non-abelian)
        assert_ne!(g.multiply(s1, r1), g.multiply(r1, s1));
    }

    #[test]
    fn s3_irreps_validate() {
        let g = FiniteGroup::symmetric_3();
        for rep in s3_irreps(&g) {
            rep.validate(&g).unwrap();
        }
    }

    #[test]
    fn s3_standard_character_values() {
        let g = FiniteGroup::symmetric_3();
        let std_rep = &s3_irreps(&g)[2];
        assert_eq!(std_rep.character(g.identity()), Scalar::from_int(2));
        assert_eq!(
            std_rep.character(g.index_of("s1").unwrap()),
            Scalar::zero()
        );
        assert_eq!(
            std_rep.character(g.index_of("r1").unwrap()),
            Scalar::from_int(-1)
        );
    }

    #[test]
    fn bad_tables_are_rejected() {
        // constant table: no identity element
        let bad = FiniteGroup::from_table(
            vec!["a".into(), "b".into()],
            vec![vec![0, 0], vec![0, 0]],
        );
        assert!(bad.is_err());
        // left-identity only
        let bad2 = FiniteGroup::from_table(
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0, 1, 2], vec![1, 2, 1], vec![2, 1, 2]],
        );
        assert!(bad2.is_err());
    }
}
