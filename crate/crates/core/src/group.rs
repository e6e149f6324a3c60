//! Dihedral and cyclic group elements, connecting sets, and the adjacency
//! builders for Cayley graphs over `C_n` and `D_n`.
//!
//! `D_n = <a, b | a^n = b^2 = 1, bab = a^-1>`. The element `a^k b` rotates by
//! `k` and then reflects. Two vertices `u`, `v` are adjacent iff `v u^-1 ∈ H`.
//! Vertices are ordered `1, a, ..., a^{n-1}, b, ab, ..., a^{n-1}b`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{AxiomViolation, Error, Result};
use crate::matrix::IntMatrix;

/// Which group the Cayley graph lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `Cay(C_n, H')`, `n` vertices.
    Cyclic,
    /// `Cay(D_n, H)`, `2n` vertices.
    Dihedral,
}

impl Mode {
    pub fn group_order(self, n: usize) -> usize {
        match self {
            Mode::Cyclic => n,
            Mode::Dihedral => 2 * n,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Cyclic => "cyclic",
            Mode::Dihedral => "dihedral",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cyclic" => Ok(Mode::Cyclic),
            "dihedral" => Ok(Mode::Dihedral),
            other => Err(format!("unknown mode `{other}` (expected cyclic or dihedral)")),
        }
    }
}

fn check_order(n: usize) -> Result<()> {
    if n < 3 {
        Err(Error::OrderTooSmall(n))
    } else {
        Ok(())
    }
}

/// A rotation `a^k` or reflection `a^k b` of `D_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    order: usize,
    exponent: usize,
    reflection: bool,
}

impl GroupElement {
    pub fn identity(order: usize) -> Result<Self> {
        Self::rotation(0, order)
    }

    pub fn rotation(exponent: usize, order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(Self {
            order,
            exponent: exponent % order,
            reflection: false,
        })
    }

    pub fn reflection(exponent: usize, order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(Self {
            order,
            exponent: exponent % order,
            reflection: true,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn is_reflection(&self) -> bool {
        self.reflection
    }

    pub fn is_identity(&self) -> bool {
        !self.reflection && self.exponent == 0
    }

    /// Position in the canonical vertex order.
    pub fn index(&self) -> usize {
        self.exponent + if self.reflection { self.order } else { 0 }
    }

    /// Group product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order;
        // a^i · a^j x = a^{i+j} x,  a^i b · a^j x = a^{i-j} b x
        let exponent = if self.reflection {
            (self.exponent + n - other.exponent) % n
        } else {
            (self.exponent + other.exponent) % n
        };
        Self {
            order: n,
            exponent,
            reflection: self.reflection ^ other.reflection,
        }
    }

    pub fn inverse(&self) -> Self {
        if self.reflection {
            *self
        } else {
            Self {
                exponent: (self.order - self.exponent) % self.order,
                ..*self
            }
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{}", self.exponent)?;
        if self.reflection {
            f.write_str(" b")?;
        }
        Ok(())
    }
}

/// `H = H' ∪ H''` given by the rotation exponents `R` and reflection
/// exponents `S`. Construction only checks ranges; the Cayley axioms are
/// checked by [`ConnectingSet::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectingSet {
    n: usize,
    rotations: BTreeSet<usize>,
    reflections: BTreeSet<usize>,
}

/// The split of a validated connecting set into `H'` and `H''`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HSplit {
    pub rotations: Vec<GroupElement>,
    pub reflections: Vec<GroupElement>,
}

impl ConnectingSet {
    pub fn new(
        n: usize,
        rotations: impl IntoIterator<Item = usize>,
        reflections: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        check_order(n)?;
        let rotations: BTreeSet<usize> = rotations.into_iter().collect();
        let reflections: BTreeSet<usize> = reflections.into_iter().collect();
        if let Some(&exponent) = rotations.iter().chain(&reflections).find(|&&k| k >= n) {
            return Err(Error::ExponentOutOfRange { exponent, order: n });
        }
        Ok(Self {
            n,
            rotations,
            reflections,
        })
    }

    /// A connecting set for `C_n` (no reflections).
    pub fn cyclic(n: usize, rotations: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(n, rotations, [])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rotations(&self) -> &BTreeSet<usize> {
        &self.rotations
    }

    pub fn reflections(&self) -> &BTreeSet<usize> {
        &self.reflections
    }

    /// `|H|`, the valency of the Cayley graph.
    pub fn len(&self) -> usize {
        self.rotations.len() + self.reflections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let n = self.n;
        self.rotations
            .iter()
            .map(move |&k| GroupElement {
                order: n,
                exponent: k,
                reflection: false,
            })
            .chain(self.reflections.iter().map(move |&k| GroupElement {
                order: n,
                exponent: k,
                reflection: true,
            }))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.order == self.n
            && if g.reflection {
                self.reflections.contains(&g.exponent)
            } else {
                self.rotations.contains(&g.exponent)
            }
    }

    /// Checks identity exclusion, inverse closure and, when asked, that `H`
    /// generates the group. Generation is decided by closure.
    pub fn validate(&self, mode: Mode, require_generation: bool) -> Result<HSplit> {
        if mode == Mode::Cyclic && !self.reflections.is_empty() {
            return Err(AxiomViolation::ReflectionsInCyclicMode {
                count: self.reflections.len(),
            }
            .into());
        }
        if self.is_empty() {
            return Err(AxiomViolation::Empty.into());
        }
        if self.rotations.contains(&0) {
            return Err(AxiomViolation::ContainsIdentity.into());
        }
        for &k in &self.rotations {
            let inv = (self.n - k) % self.n;
            if !self.rotations.contains(&inv) {
                return Err(AxiomViolation::NotInverseClosed {
                    present: k,
                    missing: inv,
                }
                .into());
            }
        }
        if require_generation {
            let reached = self.closure_size();
            let order = mode.group_order(self.n);
            if reached != order {
                return Err(AxiomViolation::DoesNotGenerate { reached, order }.into());
            }
        }
        let split = self.elements().partition::<Vec<_>, _>(|g| !g.reflection);
        Ok(HSplit {
            rotations: split.0,
            reflections: split.1,
        })
    }

    /// Order of the subgroup `<H>`, by breadth-first closure from the identity.
    pub fn closure_size(&self) -> usize {
        let gens: Vec<GroupElement> = self.elements().collect();
        let start = GroupElement {
            order: self.n,
            exponent: 0,
            reflection: false,
        };
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(g) = queue.pop_front() {
            for h in &gens {
                let next = g.mul_unchecked(h);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        seen.len()
    }

    /// Generation via gcd: the rotation subgroup of `<H>` is generated by `R`
    /// and the differences of `S`, and in dihedral mode one reflection is
    /// needed on top of it. Agrees with [`Self::closure_size`].
    pub fn generates_by_gcd(&self, mode: Mode) -> bool {
        if mode == Mode::Dihedral && self.reflections.is_empty() {
            return false;
        }
        if mode == Mode::Cyclic && !self.reflections.is_empty() {
            return false;
        }
        let mut g = self.n;
        for &k in &self.rotations {
            g = g.gcd(&k);
        }
        if let Some(&first) = self.reflections.iter().next() {
            for &s in &self.reflections {
                g = g.gcd(&(s + self.n - first));
            }
        }
        g == 1
    }
}

impl fmt::Display for ConnectingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |s: &BTreeSet<usize>| {
            s.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "n={} R={{{}}} S={{{}}}",
            self.n,
            join(&self.rotations),
            join(&self.reflections)
        )
    }
}

/// First rows of the blocks of `A = [M N; N M]`. `M` is circulant (rows
/// shift right), `N` is anti-circulant (rows shift left).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAdjacency {
    pub n: usize,
    pub m_row: Vec<i64>,
    pub n_row: Vec<i64>,
}

impl BlockAdjacency {
    /// `M[i][j] = m_row[(j - i) mod n]`.
    pub fn m(&self) -> IntMatrix {
        let n = self.n;
        IntMatrix::from_fn(n, n, |i, j| self.m_row[(j + n - i) % n])
    }

    /// `N[i][j] = n_row[(i + j) mod n]`.
    pub fn n_block(&self) -> IntMatrix {
        let n = self.n;
        IntMatrix::from_fn(n, n, |i, j| self.n_row[(i + j) % n])
    }

    /// The full `2n × 2n` matrix `[M N; N M]`.
    pub fn expand(&self) -> IntMatrix {
        let n = self.n;
        let m = self.m();
        let nb = self.n_block();
        IntMatrix::from_fn(2 * n, 2 * n, |i, j| {
            let (bi, bj) = (i / n, j / n);
            let (ii, jj) = (i % n, j % n);
            if bi == bj {
                m[(ii, jj)]
            } else {
                nb[(ii, jj)]
            }
        })
    }
}

/// Block form of the adjacency matrix of `Cay(D_n, H)`. Assumes `cs` has
/// been validated in dihedral mode.
pub fn build_block_adjacency(cs: &ConnectingSet) -> BlockAdjacency {
    let indicator = |set: &BTreeSet<usize>| {
        (0..cs.n)
            .map(|k| i64::from(set.contains(&k)))
            .collect::<Vec<_>>()
    };
    BlockAdjacency {
        n: cs.n,
        m_row: indicator(&cs.rotations),
        n_row: indicator(&cs.reflections),
    }
}

/// First row of the circulant adjacency matrix of `Cay(C_n, H')`.
pub fn build_cyclic_adjacency(cs: &ConnectingSet, require_generation: bool) -> Result<Vec<i64>> {
    cs.validate(Mode::Cyclic, require_generation)?;
    Ok((0..cs.n)
        .map(|k| i64::from(cs.rotations.contains(&k)))
        .collect())
}

/// Group elements in vertex order.
pub fn vertex_order(n: usize, mode: Mode) -> Result<Vec<GroupElement>> {
    check_order(n)?;
    let rotations = (0..n).map(|k| GroupElement {
        order: n,
        exponent: k,
        reflection: false,
    });
    let reflections = (0..n).map(|k| GroupElement {
        order: n,
        exponent: k,
        reflection: true,
    });
    Ok(match mode {
        Mode::Cyclic => rotations.collect(),
        Mode::Dihedral => rotations.chain(reflections).collect(),
    })
}

/// Adjacency matrix built straight from the definition `u ~ v ⇔ v u^-1 ∈ H`,
/// independently of the block formulas.
pub fn cayley_adjacency(cs: &ConnectingSet, mode: Mode) -> Result<IntMatrix> {
    let vertices = vertex_order(cs.n, mode)?;
    let size = vertices.len();
    Ok(IntMatrix::from_fn(size, size, |i, j| {
        let u = vertices[i];
        let v = vertices[j];
        i64::from(cs.contains(&v.mul_unchecked(&u.inverse())))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rot(k: usize, n: usize) -> GroupElement {
        GroupElement::rotation(k, n).unwrap()
    }

    fn refl(k: usize, n: usize) -> GroupElement {
        GroupElement::reflection(k, n).unwrap()
    }

    #[test]
    fn multiply_examples() {
        assert!(rot(1, 4).multiply(&rot(3, 4)).unwrap().is_identity());
        assert!(refl(2, 5).multiply(&refl(2, 5)).unwrap().is_identity());
        // ba = a^-1 b
        assert_eq!(refl(0, 4).multiply(&rot(1, 4)).unwrap(), refl(3, 4));
    }

    #[test]
    fn multiply_rejects_mixed_orders() {
        assert_eq!(
            rot(1, 4).multiply(&rot(1, 5)),
            Err(Error::OrderMismatch { left: 4, right: 5 })
        );
    }

    #[test]
    fn small_orders_rejected() {
        assert_eq!(GroupElement::identity(2), Err(Error::OrderTooSmall(2)));
        assert_eq!(
            ConnectingSet::new(1, [], [0]),
            Err(Error::OrderTooSmall(1))
        );
    }

    #[test]
    fn group_axioms_exhaustive_d5() {
        let els = vertex_order(5, Mode::Dihedral).unwrap();
        let e = GroupElement::identity(5).unwrap();
        for x in &els {
            assert_eq!(x.multiply(&x.inverse()).unwrap(), e);
            for y in &els {
                for z in &els {
                    let l = x.multiply(y).unwrap().multiply(z).unwrap();
                    let r = x.multiply(&y.multiply(z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
        // bab = a^-1
        let (a, b) = (rot(1, 5), refl(0, 5));
        assert_eq!(b.multiply(&a).unwrap().multiply(&b).unwrap(), rot(4, 5));
    }

    #[test]
    fn validate_examples() {
        let cs = ConnectingSet::new(4, [1, 3], [0]).unwrap();
        let split = cs.validate(Mode::Dihedral, true).unwrap();
        assert_eq!(split.rotations, vec![rot(1, 4), rot(3, 4)]);
        assert_eq!(split.reflections, vec![refl(0, 4)]);
        assert_eq!(cs.closure_size(), 8);

        let cs = ConnectingSet::new(4, [1], [0]).unwrap();
        assert_eq!(
            cs.validate(Mode::Dihedral, true),
            Err(AxiomViolation::NotInverseClosed {
                present: 1,
                missing: 3
            }
            .into())
        );

        let cs = ConnectingSet::new(9, [], [0, 1]).unwrap();
        assert!(cs.validate(Mode::Dihedral, true).is_ok());
        assert!(cs.generates_by_gcd(Mode::Dihedral));
    }

    #[test]
    fn validate_errors() {
        let empty = ConnectingSet::new(5, [], []).unwrap();
        assert_eq!(
            empty.validate(Mode::Dihedral, false),
            Err(AxiomViolation::Empty.into())
        );
        let ident = ConnectingSet::new(5, [0], [1]).unwrap();
        assert_eq!(
            ident.validate(Mode::Dihedral, false),
            Err(AxiomViolation::ContainsIdentity.into())
        );
        let cyc = ConnectingSet::new(5, [1, 4], [1]).unwrap();
        assert!(matches!(
            cyc.validate(Mode::Cyclic, true),
            Err(Error::InvalidConnectingSet(
                AxiomViolation::ReflectionsInCyclicMode { count: 1 }
            ))
        ));
        // no reflection: rotations alone cannot generate D_n
        let rot_only = ConnectingSet::new(5, [1, 4], []).unwrap();
        assert_eq!(
            rot_only.validate(Mode::Dihedral, true),
            Err(AxiomViolation::DoesNotGenerate {
                reached: 5,
                order: 10
            }
            .into())
        );
        assert!(rot_only.validate(Mode::Dihedral, false).is_ok());
        assert_eq!(
            ConnectingSet::new(4, [4], []),
            Err(Error::ExponentOutOfRange {
                exponent: 4,
                order: 4
            })
        );
    }

    #[test]
    fn cyclic_adjacency_examples() {
        let c4 = ConnectingSet::cyclic(4, [1, 3]).unwrap();
        assert_eq!(build_cyclic_adjacency(&c4, true).unwrap(), vec![0, 1, 0, 1]);
        let c5 = ConnectingSet::cyclic(5, [1, 4]).unwrap();
        assert_eq!(
            build_cyclic_adjacency(&c5, true).unwrap(),
            vec![0, 1, 0, 0, 1]
        );
        let c6 = ConnectingSet::cyclic(6, [2, 4]).unwrap();
        assert_eq!(
            build_cyclic_adjacency(&c6, true),
            Err(AxiomViolation::DoesNotGenerate {
                reached: 3,
                order: 6
            }
            .into())
        );
        assert!(build_cyclic_adjacency(&c6, false).is_ok());
    }

    #[test]
    fn block_adjacency_examples() {
        let cube = build_block_adjacency(&ConnectingSet::new(4, [1, 3], [0]).unwrap());
        assert_eq!(cube.m_row, vec![0, 1, 0, 1]);
        assert_eq!(cube.n_row, vec![1, 0, 0, 0]);

        let k33 = build_block_adjacency(&ConnectingSet::new(3, [], [0, 1, 2]).unwrap());
        assert_eq!(k33.m_row, vec![0, 0, 0]);
        assert_eq!(k33.n_row, vec![1, 1, 1]);
        let a = k33.expand();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(a[(i, j)], i64::from((i < 3) != (j < 3)));
            }
        }
    }

    #[test]
    fn n_block_rows_shift_left() {
        let adj = build_block_adjacency(&ConnectingSet::new(5, [], [1, 3]).unwrap());
        let nb = adj.n_block();
        for i in 1..5 {
            let prev = nb.row(i - 1);
            let row = nb.row(i);
            for j in 0..5 {
                assert_eq!(row[j], prev[(j + 1) % 5]);
            }
        }
        assert_eq!(nb, nb.transpose());
    }

    #[test]
    fn block_matches_definition_d4() {
        let cs = ConnectingSet::new(4, [1, 3], [0, 2]).unwrap();
        assert_eq!(
            build_block_adjacency(&cs).expand(),
            cayley_adjacency(&cs, Mode::Dihedral).unwrap()
        );
    }

    #[test]
    fn element_display() {
        assert_eq!(refl(3, 7).to_string(), "a^3 b");
        assert_eq!(rot(0, 7).to_string(), "a^0");
        assert_eq!(
            ConnectingSet::new(4, [1, 3], [0]).unwrap().to_string(),
            "n=4 R={1,3} S={0}"
        );
    }
}
