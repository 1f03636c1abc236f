//! K3 lattice model `L = Z E' ⊕ U(1)^⊥ ⊕ Z E` with section classes and the
//! monodromy of translation by a section.
//!
//! The hyperbolic block has `E·E = E'·E' = 0` and `E·E' = 1`; the orthogonal
//! part has basis `d_1 … d_t` with Gram matrix `gram`. Matrices use the basis
//! order `(E', d_1, …, d_t, E)` and act on column vectors.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::rational::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3LatticeModel {
    label: String,
    gram: Vec<Vec<i64>>,
}

/// `a E' + sum_i v_i d_i + b E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K3Class {
    pub a: Q,
    pub v: Vec<Q>,
    pub b: Q,
}

impl K3Class {
    pub fn to_vec(&self) -> Vec<Q> {
        let mut out = Vec::with_capacity(self.v.len() + 2);
        out.push(self.a.clone());
        out.extend(self.v.iter().cloned());
        out.push(self.b.clone());
        out
    }

    pub fn from_vec(coords: &[Q]) -> Self {
        let t = coords.len() - 2;
        Self { a: coords[0].clone(), v: coords[1..=t].to_vec(), b: coords[t + 1].clone() }
    }

    pub fn is_integral(&self) -> bool {
        self.to_vec().iter().all(rational::is_integral)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let a: Vec<Q> = self.to_vec().iter().zip(other.to_vec()).map(|(x, y)| x - y).collect();
        Self::from_vec(&a)
    }
}

impl K3LatticeModel {
    pub fn new(label: impl Into<String>, gram: Vec<Vec<i64>>) -> Result<Self> {
        let t = gram.len();
        if let Some(row) = gram.iter().find(|r| r.len() != t) {
            return Err(Error::Shape {
                expected: format!("{t}x{t} Gram matrix"),
                found: format!("row of length {}", row.len()),
            });
        }
        for i in 0..t {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Invalid(format!(
                        "Gram matrix not symmetric at ({i},{j}): {} vs {}",
                        gram[i][j], gram[j][i]
                    )));
                }
            }
        }
        Ok(Self { label: label.into(), gram })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Rank `t` of the orthogonal part.
    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Even diagonal; needed for `σ_D` to be integral for every integral `D`.
    pub fn is_even(&self) -> bool {
        self.gram.iter().enumerate().all(|(i, r)| r[i] % 2 == 0)
    }

    pub fn e(&self) -> K3Class {
        K3Class { a: Q::zero(), v: vec![Q::zero(); self.rank()], b: Q::one() }
    }

    pub fn e_prime(&self) -> K3Class {
        K3Class { a: Q::one(), v: vec![Q::zero(); self.rank()], b: Q::zero() }
    }

    pub fn d(&self, i: usize) -> K3Class {
        let mut v = vec![Q::zero(); self.rank()];
        v[i] = Q::one();
        K3Class { a: Q::zero(), v, b: Q::zero() }
    }

    /// `D` viewed as a class in `U(1)^⊥`.
    pub fn orthogonal_class(&self, d: &[Q]) -> K3Class {
        K3Class { a: Q::zero(), v: d.to_vec(), b: Q::zero() }
    }

    fn check_len(&self, d: &[Q]) -> Result<()> {
        if d.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::Shape {
                expected: format!("vector of length {}", self.rank()),
                found: format!("length {}", d.len()),
            })
        }
    }

    /// Intersection form on the orthogonal part.
    pub fn orthogonal_pair(&self, x: &[Q], y: &[Q]) -> Q {
        let mut total = Q::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                total += xi * yj * Q::from_integer(self.gram[i][j].into());
            }
        }
        total
    }

    pub fn pair(&self, x: &K3Class, y: &K3Class) -> Q {
        &x.a * &y.b + &x.b * &y.a + self.orthogonal_pair(&x.v, &y.v)
    }

    /// Gram matrix of the full lattice in the basis `(E', d_1, …, d_t, E)`.
    pub fn full_gram(&self) -> RationalMatrix {
        let t = self.rank();
        let mut g = RationalMatrix::zeros(t + 2, t + 2);
        g.set(0, t + 1, Q::one());
        g.set(t + 1, 0, Q::one());
        for i in 0..t {
            for j in 0..t {
                g.set(i + 1, j + 1, Q::from_integer(self.gram[i][j].into()));
            }
        }
        g
    }

    /// `σ_D = E' + D - (D²/2 + 1) E`.
    pub fn sigma_class(&self, d: &[Q]) -> Result<K3Class> {
        self.check_len(d)?;
        let d2 = self.orthogonal_pair(d, d);
        Ok(K3Class { a: Q::one(), v: d.to_vec(), b: -(d2 / rational::int(2) + Q::one()) })
    }

    /// Closed-form monodromy: `T_D(E) = E`, `T_D(α) = α - (D·α) E` on
    /// `U(1)^⊥`, `T_D(E') = E' + D - (D²/2) E`.
    pub fn monodromy_td(&self, d: &[Q]) -> Result<RationalMatrix> {
        self.check_len(d)?;
        let t = self.rank();
        let mut m = RationalMatrix::identity(t + 2);
        for (i, di) in d.iter().enumerate() {
            m.set(i + 1, 0, di.clone());
        }
        m.set(t + 1, 0, -self.orthogonal_pair(d, d) / rational::int(2));
        for i in 0..t {
            let basis = self.d(i);
            m.set(t + 1, i + 1, -self.orthogonal_pair(d, &basis.v));
        }
        Ok(m)
    }

    /// The action of translation by `σ_D` rebuilt from its defining
    /// behaviour alone: the linear map fixing `E` and sending `σ_α` to
    /// `σ_{α+D}` for `α = 0, d_1, …, d_t`. Consistency is then asserted on
    /// two further classes `σ_α`.
    pub fn translation_action(&self, d: &[Q]) -> Result<RationalMatrix> {
        self.check_len(d)?;
        let t = self.rank();
        let shift = |alpha: &[Q]| -> Vec<Q> { alpha.iter().zip(d).map(|(a, b)| a + b).collect() };
        let mut alphas = vec![vec![Q::zero(); t]];
        alphas.extend((0..t).map(|i| self.d(i).v));
        let mut sources = Vec::with_capacity(t + 2);
        let mut targets = Vec::with_capacity(t + 2);
        for alpha in &alphas {
            sources.push(self.sigma_class(alpha)?.to_vec());
            targets.push(self.sigma_class(&shift(alpha))?.to_vec());
        }
        sources.push(self.e().to_vec());
        targets.push(self.e().to_vec());
        let src = RationalMatrix::from_columns(t + 2, &sources);
        let dst = RationalMatrix::from_columns(t + 2, &targets);
        let inv = src.inverse().ok_or(Error::DegenerateSpan)?;
        let map = &dst * &inv;
        let all: Vec<Q> = vec![Q::one(); t];
        let mixed: Vec<Q> = (0..t).map(|i| rational::int(if i % 2 == 0 { -2 } else { 3 })).collect();
        for alpha in [all, mixed] {
            let image = map.mul_vec(&self.sigma_class(&alpha)?.to_vec());
            if image != self.sigma_class(&shift(&alpha))?.to_vec() {
                return Err(Error::InconsistentAction { alpha: rational::vec_to_strings(&alpha) });
            }
        }
        Ok(map)
    }

    pub fn apply(&self, m: &RationalMatrix, x: &K3Class) -> K3Class {
        K3Class::from_vec(&m.mul_vec(&x.to_vec()))
    }

    /// `(-σ_0·σ_D, D²/2 + 2, equal)`.
    pub fn riemann_roch_check(&self, d: &[Q]) -> Result<(Q, Q, bool)> {
        let s0 = self.sigma_class(&vec![Q::zero(); self.rank()])?;
        let sd = self.sigma_class(d)?;
        let lhs = -self.pair(&s0, &sd);
        let rhs = self.orthogonal_pair(d, d) / rational::int(2) + rational::int(2);
        let eq = lhs == rhs;
        Ok((lhs, rhs, eq))
    }

    /// `T` preserves the intersection form: `T^t G T = G`.
    pub fn is_isometry(&self, m: &RationalMatrix) -> bool {
        let g = self.full_gram();
        &(&m.transpose() * &g) * m == g
    }

    /// `E' = σ_0 + (c_2/24) E` with `c_2 = 24` for a K3 surface.
    pub fn fiber_class_relation(&self) -> bool {
        let s0 = self.sigma_class(&vec![Q::zero(); self.rank()]).expect("zero vector has rank length");
        let c2_over_24 = rational::frac(24, 24);
        let e = self.e();
        let rhs = K3Class { a: &s0.a + &c2_over_24 * &e.a, v: s0.v.clone(), b: &s0.b + &c2_over_24 * &e.b };
        rhs == self.e_prime()
    }
}
