//! The generic torus Hopf algebra over `Q(v)` in its two models:
//!
//! - the group-algebra model `Q(v)[Z^I]` with invertible group-likes `K_i`,
//!   where all identities are decided ([`GroupAlgElem`]);
//! - the PBW-basis model with basis monomials
//!   `K_1^{d_1} ... K_r^{d_r} k_{1,t_1} ... k_{r,t_r}`, `d_i` in `{0,1}`
//!   ([`TorusElem`]), reachable through [`to_basis`]/[`expand`].
//!
//! On top of the models sit the binomial generators `[K_i; c; t]`
//! ([`kbin`]), the polynomials `p_{n,s}` ([`p_poly`]) with their triangular
//! matrix `P` and inverse `Q` ([`p_matrix`], [`q_matrix`], [`k_from_h`]),
//! the skew-primitive elements `h_{i,n}` ([`h_elem`]), the evaluation
//! characters ([`GroupAlgElem::char_eval`]) and the sign automorphism
//! `K_i -> -K_i` ([`GroupAlgElem::sign_automorphism`]).
//!
//! Every builder has a `_scaled` variant taking an exponent `d`, realizing
//! the same element with `v` replaced by `v^d` in all structure constants;
//! the multiply-laced torus is exactly this substitution.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One};

use crate::error::{Error, Result};
use crate::laurent::{q_binomial, q_factorial, rat_int, LaurentPoly, RatFunc};

/// An element of the group algebra `Q(v)[Z^I]`: a finitely supported map
/// from exponent vectors of the `K_i` to `Q(v)` coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAlgElem {
    rank: usize,
    terms: BTreeMap<Vec<i64>, RatFunc>,
}

impl GroupAlgElem {
    pub fn zero(rank: usize) -> Self {
        GroupAlgElem { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(rank, vec![0; rank], RatFunc::one())
    }

    pub fn scalar(rank: usize, c: RatFunc) -> Self {
        Self::monomial(rank, vec![0; rank], c)
    }

    pub fn monomial(rank: usize, exps: Vec<i64>, coeff: RatFunc) -> Self {
        assert_eq!(exps.len(), rank);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        GroupAlgElem { rank, terms }
    }

    /// The group-like generator `K_i^e` (any integer exponent).
    pub fn k_pow(rank: usize, i: usize, e: i64) -> Self {
        assert!(i < rank, "index {} out of range for rank {}", i, rank);
        let mut exps = vec![0; rank];
        exps[i] = e;
        Self::monomial(rank, exps, RatFunc::one())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &RatFunc)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> RatFunc {
        self.terms.get(exps).cloned().unwrap_or_else(RatFunc::zero)
    }

    fn add_term(&mut self, exps: Vec<i64>, coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &coeff;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.rank, rhs.rank);
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        GroupAlgElem {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.rank, rhs.rank);
        let mut out = Self::zero(self.rank);
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                let exps: Vec<i64> = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(exps, c1 * c2);
            }
        }
        out
    }

    pub fn scalar_mul(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        GroupAlgElem {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.rank);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Tensor product: an element of the group algebra on the disjoint union
    /// of the two index sets (used to form elements of `V^0 (x) V^0`).
    pub fn tensor(&self, rhs: &Self) -> Self {
        let rank = self.rank + rhs.rank;
        let mut out = Self::zero(rank);
        for (e1, c1) in self.terms.iter() {
            for (e2, c2) in rhs.terms.iter() {
                let mut exps = e1.clone();
                exps.extend_from_slice(e2);
                out.add_term(exps, c1 * c2);
            }
        }
        out
    }

    /// Comultiplication into `Q(v)[Z^{2I}]`: determined by the `K_i` being
    /// group-like, so `K^e` maps to `K^e (x) K^e`.
    pub fn comult(&self) -> Self {
        let mut out = Self::zero(2 * self.rank);
        for (e, c) in self.terms.iter() {
            let mut exps = e.clone();
            exps.extend_from_slice(e);
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Counit `K_i -> 1`.
    pub fn counit(&self) -> RatFunc {
        let mut out = RatFunc::zero();
        for c in self.terms.values() {
            out = &out + c;
        }
        out
    }

    /// Antipode `K_i -> K_i^-1`.
    pub fn antipode(&self) -> Self {
        GroupAlgElem {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// The algebra automorphism `K_i -> -K_i` for every `i`. On the basis
    /// monomials it acts by `(-1)^t` on each `k_{i,t}` factor.
    pub fn sign_automorphism(&self) -> Self {
        GroupAlgElem {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let total: i64 = e.iter().sum();
                    let coeff = if total.rem_euclid(2) == 1 { -c } else { c.clone() };
                    (e.clone(), coeff)
                })
                .collect(),
        }
    }

    /// The character sending `K_i` to `v^j` (or `-v^j` in the `tilde`
    /// variant) and every other `K_p` to `1`.
    pub fn char_eval(&self, i: usize, j: i64, tilde: bool) -> RatFunc {
        assert!(i < self.rank);
        let mut out = RatFunc::zero();
        for (e, c) in self.terms.iter() {
            let mut val = &RatFunc::v_pow(j * e[i]) * c;
            if tilde && e[i].rem_euclid(2) == 1 {
                val = -&val;
            }
            out = &out + &val;
        }
        out
    }

    /// Multiply the two tensor legs of an element of `Q(v)[Z^{2I}]` back
    /// together (the multiplication map `V^0 (x) V^0 -> V^0`).
    pub fn mul_legs(&self) -> Self {
        assert_eq!(self.rank % 2, 0);
        let r = self.rank / 2;
        let mut out = Self::zero(r);
        for (e, c) in self.terms.iter() {
            let exps: Vec<i64> = (0..r).map(|i| e[i] + e[r + i]).collect();
            out.add_term(exps, c.clone());
        }
        out
    }

    /// Apply `f` to the first (`leg = 0`) or second (`leg = 1`) tensor leg.
    pub fn map_leg(&self, leg: usize, f: impl Fn(&Self) -> Self) -> Self {
        assert_eq!(self.rank % 2, 0);
        let r = self.rank / 2;
        let mut out = Self::zero(self.rank);
        for (e, c) in self.terms.iter() {
            let (lo, hi) = e.split_at(r);
            let target = if leg == 0 { lo } else { hi };
            let other = if leg == 0 { hi } else { lo };
            let mapped = f(&Self::monomial(r, target.to_vec(), c.clone()));
            for (me, mc) in mapped.terms.iter() {
                let mut exps = Vec::with_capacity(self.rank);
                if leg == 0 {
                    exps.extend_from_slice(me);
                    exps.extend_from_slice(other);
                } else {
                    exps.extend_from_slice(other);
                    exps.extend_from_slice(me);
                }
                out.add_term(exps, mc.clone());
            }
        }
        out
    }
}

impl fmt::Display for GroupAlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| {
                    if *x == 1 {
                        format!("K[{}]", i + 1)
                    } else {
                        format!("K[{}]^{}", i + 1, x)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "({})", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({})*{}", c, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupAlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A PBW basis monomial `K^delta k^t` with `delta_i` in `{0,1}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TorusBasisMonomial {
    pub delta: Vec<u8>,
    pub t: Vec<u32>,
}

/// An element of the torus in the PBW-basis model: a finitely supported map
/// from basis monomials to `Q(v)` coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct TorusElem {
    rank: usize,
    terms: BTreeMap<TorusBasisMonomial, RatFunc>,
}

impl TorusElem {
    pub fn zero(rank: usize) -> Self {
        TorusElem { rank, terms: BTreeMap::new() }
    }

    pub fn monomial(rank: usize, m: TorusBasisMonomial, coeff: RatFunc) -> Self {
        let mut out = Self::zero(rank);
        out.add_term(m, coeff);
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TorusBasisMonomial, &RatFunc)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: TorusBasisMonomial, coeff: RatFunc) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &coeff;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }
}

impl fmt::Display for TorusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            for i in 0..self.rank {
                if m.delta[i] == 1 {
                    parts.push(format!("K[{}]", i + 1));
                }
                if m.t[i] > 0 {
                    parts.push(format!("k[{};{}]", i + 1, m.t[i]));
                }
            }
            if parts.is_empty() {
                write!(f, "({})", c)?;
            } else if c.is_one() {
                write!(f, "{}", parts.join("*"))?;
            } else {
                write!(f, "({})*{}", c, parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TorusElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `phi_n(j)`: `0` when `n - j` is even, `1` when odd.
pub fn phi_parity(n: i64, j: i64) -> i64 {
    (n - j).rem_euclid(2)
}

/// The element `a_{i,t} = (v^{-t} K_i - v^t K_i^{-1}) / (v - v^{-1})`, with
/// `v` replaced by `v^d`. Defined for every integer `t`; its antipode is
/// `-a_{i,-t}`.
pub fn a_elem_scaled(rank: usize, i: usize, t: i64, d: i64) -> GroupAlgElem {
    let denom = RatFunc::new(
        LaurentPoly::one(),
        &LaurentPoly::v_pow(d) - &LaurentPoly::v_pow(-d),
    )
    .expect("v^d - v^-d is nonzero");
    let kp = GroupAlgElem::k_pow(rank, i, 1).scalar_mul(&RatFunc::v_pow(-t * d));
    let km = GroupAlgElem::k_pow(rank, i, -1).scalar_mul(&RatFunc::v_pow(t * d));
    kp.sub(&km).scalar_mul(&denom)
}

pub fn a_elem(rank: usize, i: usize, t: i64) -> GroupAlgElem {
    a_elem_scaled(rank, i, t, 1)
}

thread_local! {
    static K_ELEM_CACHE: std::cell::RefCell<
        std::collections::HashMap<(usize, usize, u32, i64), GroupAlgElem>,
    > = std::cell::RefCell::new(std::collections::HashMap::new());
}

/// `k_{i,t} = [K_i; 0; t] = (1/[t]!) prod_{0 <= s < t} a_{i,s}` in the
/// group-algebra model (legal over `Q(v)`), with `v -> v^d`.
pub fn k_elem_scaled(rank: usize, i: usize, t: u32, d: i64) -> Result<GroupAlgElem> {
    let key = (rank, i, t, d);
    if let Some(x) = K_ELEM_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return Ok(x);
    }
    let mut prod = GroupAlgElem::one(rank);
    for s in 0..t as i64 {
        prod = prod.mul(&a_elem_scaled(rank, i, s, d));
    }
    let fact = q_factorial(t as i64)?.substitute_power(d);
    let inv = RatFunc::new(LaurentPoly::one(), fact)?;
    let out = prod.scalar_mul(&inv);
    K_ELEM_CACHE.with(|c| c.borrow_mut().insert(key, out.clone()));
    Ok(out)
}

pub fn k_elem(rank: usize, i: usize, t: u32) -> Result<GroupAlgElem> {
    k_elem_scaled(rank, i, t, 1)
}

/// The binomial generator `[K_i; c; t]` expanded into `K_i`-powers and
/// `k_{i,s}`: for `c >= 0`
/// `[K_i; c; t] = sum_j v^{c(t-j)} [c choose j] K_i^{-j} k_{i,t-j}`
/// and for `c < 0` (writing `c = -c'`)
/// `[K_i; -c'; t] = sum_j (-1)^j v^{c'(t-j)} [c'+j-1 choose j] K_i^j k_{i,t-j}`.
/// The `inverse` flag applies the antipode, i.e. produces `[K_i^{-1}; c; t]`.
pub fn kbin_scaled(
    rank: usize,
    i: usize,
    c: i64,
    t: u32,
    inverse: bool,
    d: i64,
) -> Result<GroupAlgElem> {
    let mut out = GroupAlgElem::zero(rank);
    for j in 0..=t as i64 {
        let (sign, binom) = if c >= 0 {
            (1i64, q_binomial(c, j)?)
        } else {
            (if j % 2 == 0 { 1 } else { -1 }, q_binomial(-c + j - 1, j)?)
        };
        if binom.is_zero() {
            continue;
        }
        let vpow = RatFunc::v_pow(c.abs() * (t as i64 - j) * d);
        let coeff = &vpow * &RatFunc::from_poly(binom.substitute_power(d));
        let kexp = if c >= 0 { -j } else { j };
        let term = GroupAlgElem::k_pow(rank, i, kexp)
            .mul(&k_elem_scaled(rank, i, t - j as u32, d)?)
            .scalar_mul(&coeff)
            .scalar_mul(&RatFunc::from_int(sign));
        out = out.add(&term);
    }
    if inverse {
        out = out.antipode();
    }
    Ok(out)
}

pub fn kbin(rank: usize, i: usize, c: i64, t: u32, inverse: bool) -> Result<GroupAlgElem> {
    kbin_scaled(rank, i, c, t, inverse, 1)
}

/// The recursively defined `p_{n,s}` for `1 <= s <= n`. Every intermediate
/// division is exact; a failed division would falsify the defining recursion
/// and raises a hard error. The result lies in `Z[v, v^-1]`.
pub fn p_poly(n: i64, s: i64) -> Result<LaurentPoly> {
    fn rec(n: i64, s: i64, cache: &mut Vec<Option<LaurentPoly>>) -> Result<LaurentPoly> {
        if let Some(p) = &cache[s as usize] {
            return Ok(p.clone());
        }
        let p = if s == 1 {
            LaurentPoly::v_pow(-phi_parity(n, 1))
        } else {
            let num = &LaurentPoly::v_pow(n * s) - &LaurentPoly::v_pow(-n * s);
            let den = &LaurentPoly::v_pow(n) - &LaurentPoly::v_pow(-n);
            let mut p = num
                .div_exact(&den)
                .ok_or_else(|| Error::InexactDivision(format!("p({},{}) head", n, s)))?
                .shift(-phi_parity(n, s) * s);
            for t in 1..s {
                let term = &rec(n, t, cache)?.shift((phi_parity(n, t) - phi_parity(n, s)) * s)
                    * &q_binomial(s, t)?;
                p = &p - &term;
            }
            p
        };
        if !p.is_integral() {
            return Err(Error::InexactDivision(format!("p({},{}) not integral", n, s)));
        }
        cache[s as usize] = Some(p.clone());
        Ok(p)
    }
    if n < 1 || s < 1 || s > n {
        return Err(Error::InvalidArgument(format!(
            "p_poly: need 1 <= s <= n, got n={} s={}",
            n, s
        )));
    }
    let mut cache = vec![None; (s + 1) as usize];
    rec(n, s, &mut cache)
}

/// Closed form for the diagonal value
/// `p_{n,n} = v^{-binom(n,2)} (-1)^{n-1} (v - v^{-1})^{n-1} [n-1]!`.
pub fn p_diag_closed_form(n: i64) -> Result<LaurentPoly> {
    let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
    let pow = (&LaurentPoly::v_pow(1) - &LaurentPoly::v_pow(-1)).pow((n - 1) as u32);
    let p = &(&pow * &q_factorial(n - 1)?).shift(-n * (n - 1) / 2) * &LaurentPoly::from_int(sign);
    Ok(p)
}

/// The skew-primitive element
/// `h_{i,n} = (K_i^n - K_i^{-n}) K_i^n / (n (v^n - v^{-n}))
///          = (1/n) (sum_s p_{n,s} k_{i,s} K_i^{phi_n(s)}) K_i^n`,
/// with `v -> v^d`. Both expressions are computed and compared; a mismatch
/// is a hard failure.
pub fn h_elem_scaled(rank: usize, i: usize, n: i64, d: i64) -> Result<GroupAlgElem> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("h_elem: n = {} must be >= 1", n)));
    }
    let closed = {
        let num = GroupAlgElem::k_pow(rank, i, 2 * n).sub(&GroupAlgElem::one(rank));
        let den =
            (&LaurentPoly::v_pow(n * d) - &LaurentPoly::v_pow(-n * d)).scalar_mul(&rat_int(n));
        num.scalar_mul(&RatFunc::new(LaurentPoly::one(), den)?)
    };
    let mut combo = GroupAlgElem::zero(rank);
    for s in 1..=n {
        let coeff = RatFunc::from_poly(p_poly(n, s)?.substitute_power(d));
        let term = k_elem_scaled(rank, i, s as u32, d)?
            .mul(&GroupAlgElem::k_pow(rank, i, phi_parity(n, s)))
            .scalar_mul(&coeff);
        combo = combo.add(&term);
    }
    combo = combo
        .mul(&GroupAlgElem::k_pow(rank, i, n))
        .scalar_mul(&RatFunc::from_rational(BigRational::one() / rat_int(n)));
    if combo != closed {
        return Err(Error::InexactDivision(format!(
            "h({},{}): p-combination disagrees with closed fraction",
            i, n
        )));
    }
    Ok(closed)
}

pub fn h_elem(rank: usize, i: usize, n: i64) -> Result<GroupAlgElem> {
    h_elem_scaled(rank, i, n, 1)
}

/// The lower-triangular matrix `P` with entries `p_{n,s} K_i^{phi_n(s)}`
/// (`1 <= s <= n <= size`), in the one-variable group algebra of `K_i`.
pub fn p_matrix(rank: usize, i: usize, size: i64) -> Result<Vec<Vec<GroupAlgElem>>> {
    let mut rows = Vec::new();
    for n in 1..=size {
        let mut row = Vec::new();
        for s in 1..=n {
            row.push(
                GroupAlgElem::k_pow(rank, i, phi_parity(n, s))
                    .scalar_mul(&RatFunc::from_poly(p_poly(n, s)?)),
            );
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The inverse `Q = P^{-1}`, computed by forward substitution. The diagonal
/// entries `p_{s,s}` are invertible over `Q(v)`.
pub fn q_matrix(rank: usize, i: usize, size: i64) -> Result<Vec<Vec<GroupAlgElem>>> {
    let p = p_matrix(rank, i, size)?;
    let mut q: Vec<Vec<GroupAlgElem>> = Vec::new();
    for n in 0..size as usize {
        let mut row = Vec::new();
        let diag_inv = {
            let c = p[n][n].coeff(&vec![0; rank]);
            GroupAlgElem::scalar(rank, c.inverse()?)
        };
        for s in 0..n {
            // q[n][s] = -p_{nn}^{-1} * sum_{m=s}^{n-1} P[n][m] Q[m][s].
            let mut acc = GroupAlgElem::zero(rank);
            for m in s..n {
                acc = acc.add(&p[n][m].mul(&q[m][s]));
            }
            row.push(acc.neg().mul(&diag_inv));
        }
        row.push(diag_inv);
        q.push(row);
    }
    Ok(q)
}

/// Express `k_{i,n}` in terms of the `h_{i,s}`:
/// `k_{i,n} = sum_{s <= n} q_{n,s} * s * h_{i,s} * K_i^{-s}`.
/// Returns the coefficients `q_{n,s}` (`s = 1..=n`) and verifies the
/// identity in the group-algebra model.
pub fn k_from_h(rank: usize, i: usize, n: i64) -> Result<Vec<GroupAlgElem>> {
    let q = q_matrix(rank, i, n)?;
    let row = q[(n - 1) as usize].clone();
    let mut rhs = GroupAlgElem::zero(rank);
    for (idx, qns) in row.iter().enumerate() {
        let s = idx as i64 + 1;
        let term = qns
            .mul(&h_elem(rank, i, s)?)
            .mul(&GroupAlgElem::k_pow(rank, i, -s))
            .scalar_mul(&RatFunc::from_int(s));
        rhs = rhs.add(&term);
    }
    if rhs != k_elem(rank, i, n as u32)? {
        return Err(Error::InexactDivision(format!(
            "k_from_h: inverted matrix row fails to reproduce k({},{})",
            i, n
        )));
    }
    Ok(row)
}

/// Check `K_i^n - K_i^{-n} = (v^n - v^{-n}) sum_s p_{n,s} k_{i,s} K_i^{phi_n(s)}`
/// in the group-algebra model; on mismatch the difference is returned.
pub fn verify_k_power_difference(
    rank: usize,
    i: usize,
    n: i64,
) -> Result<std::result::Result<(), GroupAlgElem>> {
    let lhs = GroupAlgElem::k_pow(rank, i, n).sub(&GroupAlgElem::k_pow(rank, i, -n));
    let mut sum = GroupAlgElem::zero(rank);
    for s in 1..=n {
        sum = sum.add(
            &k_elem(rank, i, s as u32)?
                .mul(&GroupAlgElem::k_pow(rank, i, phi_parity(n, s)))
                .scalar_mul(&RatFunc::from_poly(p_poly(n, s)?)),
        );
    }
    let rhs = sum.scalar_mul(&RatFunc::from_poly(
        &LaurentPoly::v_pow(n) - &LaurentPoly::v_pow(-n),
    ));
    let diff = lhs.sub(&rhs);
    Ok(if diff.is_zero() { Ok(()) } else { Err(diff) })
}

/// Single-variable expansion coefficients of `k_{i,t}`: the top coefficient
/// `f_{t,t} = v^{-binom(t,2)} / ([t]! (v-v^-1)^t)` and the bottom coefficient
/// `f_{t,-t} = (-1)^t v^{binom(t,2)} / ([t]! (v-v^-1)^t)`.
fn leading_coeffs(t: i64) -> Result<(RatFunc, RatFunc)> {
    let den =
        &q_factorial(t)? * &(&LaurentPoly::v_pow(1) - &LaurentPoly::v_pow(-1)).pow(t as u32);
    let base = RatFunc::new(LaurentPoly::one(), den)?;
    let b = t * (t - 1) / 2;
    let top = &base * &RatFunc::v_pow(-b);
    let mut bot = &base * &RatFunc::v_pow(b);
    if t % 2 == 1 {
        bot = -&bot;
    }
    Ok((top, bot))
}

/// Position of an exponent in the elimination order `0 < 1 < -1 < 2 < -2 ...`
/// used by [`to_basis`]. The basis monomial whose expansion leads at
/// exponent `e` is `k_{e-1} K` for `e > 0` and `k_{-e}` for `e <= 0`.
fn exp_position(e: i64) -> i64 {
    if e > 0 {
        2 * e - 1
    } else {
        -2 * e
    }
}

/// Convert a group-algebra element into the PBW-basis model by greedy
/// elimination on the extreme `K`-exponents, using the closed-form leading
/// coefficients of the `k_{i,t}` expansions. Each step strictly shrinks the
/// extreme exponent position, so the loop terminates.
pub fn to_basis(x: &GroupAlgElem) -> Result<TorusElem> {
    let rank = x.rank();
    let mut rem = x.clone();
    let mut out = TorusElem::zero(rank);
    while !rem.is_zero() {
        let e_star = rem
            .terms()
            .map(|(e, _)| e.clone())
            .max_by(|a, b| {
                let ka: Vec<i64> = a.iter().map(|x| exp_position(*x)).collect();
                let kb: Vec<i64> = b.iter().map(|x| exp_position(*x)).collect();
                ka.cmp(&kb)
            })
            .unwrap();
        let mut delta = vec![0u8; rank];
        let mut t = vec![0u32; rank];
        let mut lead = RatFunc::one();
        for (i, e) in e_star.iter().enumerate() {
            if *e > 0 {
                delta[i] = 1;
                t[i] = (*e - 1) as u32;
                lead = &lead * &leading_coeffs(*e - 1)?.0;
            } else {
                t[i] = (-*e) as u32;
                lead = &lead * &leading_coeffs(-*e)?.1;
            }
        }
        let coeff = rem.coeff(&e_star).div(&lead)?;
        let mono = TorusBasisMonomial { delta: delta.clone(), t: t.clone() };
        let mut expansion = GroupAlgElem::one(rank);
        for i in 0..rank {
            if delta[i] == 1 {
                expansion = expansion.mul(&GroupAlgElem::k_pow(rank, i, 1));
            }
            expansion = expansion.mul(&k_elem(rank, i, t[i])?);
        }
        rem = rem.sub(&expansion.scalar_mul(&coeff));
        debug_assert!(rem.coeff(&e_star).is_zero());
        out.add_term(mono, coeff);
    }
    Ok(out)
}

/// Expand a PBW-basis element back into the group-algebra model. This is a
/// two-sided inverse of [`to_basis`].
pub fn expand(x: &TorusElem) -> Result<GroupAlgElem> {
    let rank = x.rank();
    let mut out = GroupAlgElem::zero(rank);
    for (m, c) in x.terms() {
        let mut e = GroupAlgElem::one(rank);
        for i in 0..rank {
            if m.delta[i] == 1 {
                e = e.mul(&GroupAlgElem::k_pow(rank, i, 1));
            }
            e = e.mul(&k_elem(rank, i, m.t[i])?);
        }
        out = out.add(&e.scalar_mul(c));
    }
    Ok(out)
}

/// The sign automorphism in the basis model:
/// `K^delta k^t -> (-1)^(|delta| + |t|) K^delta k^t`.
pub fn sign_automorphism_basis(x: &TorusElem) -> TorusElem {
    let mut out = TorusElem::zero(x.rank());
    for (m, c) in x.terms() {
        let total: i64 = m.delta.iter().map(|d| *d as i64).sum::<i64>()
            + m.t.iter().map(|t| *t as i64).sum::<i64>();
        let coeff = if total % 2 == 1 { -c } else { c.clone() };
        out.add_term(m.clone(), coeff);
    }
    out
}

/// The closed comultiplication formula
/// `Delta(k_{i,t}) = sum_s k_{i,t-s} K_i^{-s} (x) k_{i,s} K_i^{t-s}`
/// as an element of the doubled group algebra; the independent side of the
/// comultiplication checks.
pub fn comult_k_closed(rank: usize, i: usize, t: u32) -> Result<GroupAlgElem> {
    let mut out = GroupAlgElem::zero(2 * rank);
    for s in 0..=t {
        let left = k_elem(rank, i, t - s)?.mul(&GroupAlgElem::k_pow(rank, i, -(s as i64)));
        let right = k_elem(rank, i, s)?.mul(&GroupAlgElem::k_pow(rank, i, (t - s) as i64));
        out = out.add(&left.tensor(&right));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::q_int;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rf_poly(terms: &[(i64, i64)]) -> RatFunc {
        RatFunc::from_poly(LaurentPoly::from_terms(
            terms.iter().map(|(e, c)| (*e, rat_int(*c))),
        ))
    }

    #[test]
    fn k_elem_small_cases() {
        assert_eq!(k_elem(1, 0, 0).unwrap(), GroupAlgElem::one(1));
        let k1 = k_elem(1, 0, 1).unwrap();
        let expect = GroupAlgElem::k_pow(1, 0, 1)
            .sub(&GroupAlgElem::k_pow(1, 0, -1))
            .scalar_mul(
                &RatFunc::new(
                    LaurentPoly::one(),
                    &LaurentPoly::v_pow(1) - &LaurentPoly::v_pow(-1),
                )
                .unwrap(),
            );
        assert_eq!(k1, expect);
        // [2] k_{i,2} = k_{i,1} a_{i,1}.
        let lhs = k_elem(1, 0, 2).unwrap().scalar_mul(&rf_poly(&[(1, 1), (-1, 1)]));
        let rhs = k1.mul(&a_elem(1, 0, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn k_recursion_via_a() {
        // [t+1] k_{t+1} = k_t (v^t k_1 - [t] K) = k_t a_{i,t}.
        for t in 0..=6i64 {
            let lhs = k_elem(1, 0, (t + 1) as u32)
                .unwrap()
                .scalar_mul(&RatFunc::from_poly(q_int(t + 1).unwrap()));
            let rhs = k_elem(1, 0, t as u32).unwrap().mul(&a_elem(1, 0, t));
            assert_eq!(lhs, rhs, "t = {}", t);
            if t >= 1 {
                let alt = k_elem(1, 0, 1).unwrap().scalar_mul(&RatFunc::v_pow(t)).sub(
                    &GroupAlgElem::k_pow(1, 0, 1)
                        .scalar_mul(&RatFunc::from_poly(q_int(t).unwrap())),
                );
                assert_eq!(a_elem(1, 0, t), alt);
            }
        }
    }

    #[test]
    fn antipode_of_a() {
        for t in -4..=4i64 {
            assert_eq!(a_elem(1, 0, t).antipode(), a_elem(1, 0, -t).neg());
        }
    }

    #[test]
    fn k_squared_times_k_t() {
        // K^2 k_t = v^t (v^(t+1) - v^(-t-1)) K k_{t+1} + v^(2t) k_t.
        for t in 0..=8i64 {
            let lhs = GroupAlgElem::k_pow(1, 0, 2).mul(&k_elem(1, 0, t as u32).unwrap());
            let c = RatFunc::from_poly(LaurentPoly::from_terms([
                (2 * t + 1, rat_int(1)),
                (-1, rat_int(-1)),
            ]));
            let rhs = GroupAlgElem::k_pow(1, 0, 1)
                .mul(&k_elem(1, 0, (t + 1) as u32).unwrap())
                .scalar_mul(&c)
                .add(&k_elem(1, 0, t as u32).unwrap().scalar_mul(&RatFunc::v_pow(2 * t)));
            assert_eq!(lhs, rhs, "t = {}", t);
        }
    }

    #[test]
    fn kbin_c_zero_is_k_elem() {
        for t in 0..=5u32 {
            assert_eq!(kbin(1, 0, 0, t, false).unwrap(), k_elem(1, 0, t).unwrap());
        }
    }

    #[test]
    fn kbin_positive_c_example() {
        // [K; 1; 1] = v k_1 + K^-1.
        let lhs = kbin(1, 0, 1, 1, false).unwrap();
        let rhs = k_elem(1, 0, 1)
            .unwrap()
            .scalar_mul(&RatFunc::v_pow(1))
            .add(&GroupAlgElem::k_pow(1, 0, -1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kbin_counit_matches_table() {
        // 1 at c=t=0; 0 at c=0, t>0; [c choose t] for c>0;
        // (-1)^t [-c+t-1 choose t] for c<0. Same under the antipode flag.
        for &inv in &[false, true] {
            for c in -4..=4i64 {
                for t in 0..=4u32 {
                    let eps = kbin(1, 0, c, t, inv).unwrap().counit();
                    let expect = if c == 0 {
                        if t == 0 {
                            RatFunc::one()
                        } else {
                            RatFunc::zero()
                        }
                    } else if c > 0 {
                        RatFunc::from_poly(q_binomial(c, t as i64).unwrap())
                    } else {
                        let b = q_binomial(-c + t as i64 - 1, t as i64).unwrap();
                        let s = if t % 2 == 0 { 1 } else { -1 };
                        &RatFunc::from_poly(b) * &RatFunc::from_int(s)
                    };
                    assert_eq!(eps, expect, "c={} t={} inv={}", c, t, inv);
                }
            }
        }
    }

    #[test]
    fn comult_of_k_elems() {
        for t in 0..=8u32 {
            let lhs = k_elem(1, 0, t).unwrap().comult();
            assert_eq!(lhs, comult_k_closed(1, 0, t).unwrap(), "t = {}", t);
        }
    }

    #[test]
    fn p_poly_examples() {
        assert_eq!(p_poly(2, 1).unwrap(), LaurentPoly::v_pow(-1));
        assert_eq!(
            p_poly(2, 2).unwrap(),
            LaurentPoly::from_terms([(-2, rat_int(1)), (0, rat_int(-1))])
        );
        assert_eq!(p_poly(3, 1).unwrap(), LaurentPoly::one());
        let sq = (&LaurentPoly::v_pow(1) - &LaurentPoly::v_pow(-1)).pow(2);
        let expect = (&sq * &q_int(2).unwrap()).shift(-2);
        assert_eq!(p_poly(3, 2).unwrap(), expect);
        let expect3 = (&sq * &q_int(2).unwrap()).shift(-3);
        assert_eq!(p_poly(3, 3).unwrap(), expect3);
        assert_eq!(
            p_poly(3, 3).unwrap(),
            LaurentPoly::from_terms([
                (0, rat_int(1)),
                (-2, rat_int(-1)),
                (-4, rat_int(-1)),
                (-6, rat_int(1)),
            ])
        );
    }

    #[test]
    fn p_diag_matches_closed_form_up_to_12() {
        for n in 1..=12i64 {
            assert_eq!(p_poly(n, n).unwrap(), p_diag_closed_form(n).unwrap(), "n = {}", n);
            for s in 1..=n {
                assert!(p_poly(n, s).unwrap().is_integral());
            }
        }
    }

    #[test]
    fn k_power_difference_identity() {
        for n in 1..=12i64 {
            assert!(verify_k_power_difference(1, 0, n).unwrap().is_ok(), "n = {}", n);
        }
    }

    #[test]
    fn h_examples() {
        // h_{i,1} = k_{i,1} K_i.
        let h1 = h_elem(1, 0, 1).unwrap();
        assert_eq!(h1, k_elem(1, 0, 1).unwrap().mul(&GroupAlgElem::k_pow(1, 0, 1)));
        // h_{i,2} = ((v^-2 - 1)/2 k_2 + (v^-1)/2 k_1 K) K^2.
        let h2 = h_elem(1, 0, 2).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        let c1 = RatFunc::from_poly(
            LaurentPoly::from_terms([(-2, rat_int(1)), (0, rat_int(-1))]).scalar_mul(&half),
        );
        let c2 = RatFunc::from_poly(LaurentPoly::monomial(half, -1));
        let expect = k_elem(1, 0, 2)
            .unwrap()
            .scalar_mul(&c1)
            .add(
                &k_elem(1, 0, 1)
                    .unwrap()
                    .mul(&GroupAlgElem::k_pow(1, 0, 1))
                    .scalar_mul(&c2),
            )
            .mul(&GroupAlgElem::k_pow(1, 0, 2));
        assert_eq!(h2, expect);
    }

    #[test]
    fn h_skew_primitive() {
        // Delta(h_n) = h_n (x) 1 + K^(2n) (x) h_n for n <= 8.
        for n in 1..=8i64 {
            let h = h_elem(1, 0, n).unwrap();
            let lhs = h.comult();
            let rhs = h
                .tensor(&GroupAlgElem::one(1))
                .add(&GroupAlgElem::k_pow(1, 0, 2 * n).tensor(&h));
            assert_eq!(lhs, rhs, "n = {}", n);
        }
    }

    #[test]
    fn k_from_h_small_cases() {
        // n = 1: k_1 = h_1 K^-1.
        let q1 = k_from_h(1, 0, 1).unwrap();
        assert_eq!(q1.len(), 1);
        assert_eq!(q1[0], GroupAlgElem::one(1));
        // n = 2: k_2 = 2/(v^-2 - 1) h_2 K^-2 - v^-1/(v^-2 - 1) h_1.
        let q2 = k_from_h(1, 0, 2).unwrap();
        let d = LaurentPoly::from_terms([(-2, rat_int(1)), (0, rat_int(-1))]);
        assert_eq!(
            q2[1],
            GroupAlgElem::scalar(1, RatFunc::new(LaurentPoly::one(), d.clone()).unwrap())
        );
        let c = RatFunc::new(LaurentPoly::monomial(rat_int(-1), -1), d).unwrap();
        assert_eq!(q2[0], GroupAlgElem::k_pow(1, 0, 1).scalar_mul(&c));
        // n = 3: the four-term expression is verified internally against
        // k_elem; additionally pin the leading coefficient
        // 3 v^3 / ((v - v^-1)^2 [2]).
        let q3 = k_from_h(1, 0, 3).unwrap();
        let den = &(&LaurentPoly::v_pow(1) - &LaurentPoly::v_pow(-1)).pow(2) * &q_int(2).unwrap();
        let lead = RatFunc::new(LaurentPoly::v_pow(3), den).unwrap();
        // q_{3,3} * 3 = 3 v^3 / (...), so q_{3,3} = v^3 / (...).
        assert_eq!(q3[2], GroupAlgElem::scalar(1, lead));
    }

    #[test]
    fn p_times_q_is_identity() {
        let size = 6;
        let p = p_matrix(1, 0, size).unwrap();
        let q = q_matrix(1, 0, size).unwrap();
        for n in 0..size as usize {
            for s in 0..size as usize {
                let mut acc = GroupAlgElem::zero(1);
                for m in 0..size as usize {
                    let pe = if m <= n { p[n][m].clone() } else { GroupAlgElem::zero(1) };
                    let qe = if s <= m { q[m][s].clone() } else { GroupAlgElem::zero(1) };
                    acc = acc.add(&pe.mul(&qe));
                }
                let expect =
                    if n == s { GroupAlgElem::one(1) } else { GroupAlgElem::zero(1) };
                assert_eq!(acc, expect, "entry ({}, {})", n, s);
            }
        }
    }

    #[test]
    fn characters_on_k() {
        // The characters send k_{i,t} to [j choose t]; the tilde variant
        // multiplies by (-1)^t.
        for j in 0..=8i64 {
            for t in 0..=8u32 {
                let k = k_elem(1, 0, t).unwrap();
                let plain = k.char_eval(0, j, false);
                assert_eq!(plain, RatFunc::from_poly(q_binomial(j, t as i64).unwrap()));
                let tilde = k.char_eval(0, j, true);
                let sign = if t % 2 == 0 { 1 } else { -1 };
                assert_eq!(tilde, &plain * &RatFunc::from_int(sign));
            }
        }
        let g = GroupAlgElem::k_pow(1, 0, 5);
        assert_eq!(g.char_eval(0, 0, false), RatFunc::one());
    }

    #[test]
    fn sign_automorphism_properties() {
        let k = GroupAlgElem::k_pow(1, 0, 1);
        assert_eq!(k.sign_automorphism(), k.neg());
        for n in 1..=5u32 {
            let kn = k_elem(1, 0, n).unwrap();
            let expect = if n % 2 == 1 { kn.neg() } else { kn.clone() };
            assert_eq!(kn.sign_automorphism(), expect, "n = {}", n);
        }
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10 {
            let x = random_elem(&mut rng, 1);
            assert_eq!(x.sign_automorphism().sign_automorphism(), x);
        }
    }

    fn random_elem(rng: &mut StdRng, rank: usize) -> GroupAlgElem {
        let mut x = GroupAlgElem::one(rank);
        for _ in 0..rng.gen_range(1..4) {
            let i = rng.gen_range(0..rank);
            let choice = rng.gen_range(0..3);
            let factor = match choice {
                0 => GroupAlgElem::k_pow(rank, i, rng.gen_range(-3..4)),
                1 => k_elem(rank, i, rng.gen_range(0..4)).unwrap(),
                _ => kbin(rank, i, rng.gen_range(-3..4), rng.gen_range(0..3), false).unwrap(),
            };
            x = x.mul(&factor);
        }
        x
    }

    #[test]
    fn basis_round_trip_on_random_elements() {
        let mut rng = StdRng::seed_from_u64(20260809);
        for case in 0..100 {
            let rank = if case % 3 == 0 { 2 } else { 1 };
            let x = random_elem(&mut rng, rank);
            let b = to_basis(&x).unwrap();
            assert_eq!(expand(&b).unwrap(), x, "case {}", case);
        }
    }

    #[test]
    fn basis_of_k_squared() {
        // From the K^2 k_t identity at t = 0: K^2 = (v - v^-1) K k_1 + 1.
        let b = to_basis(&GroupAlgElem::k_pow(1, 0, 2)).unwrap();
        let mut expect = TorusElem::zero(1);
        expect.add_term(TorusBasisMonomial { delta: vec![0], t: vec![0] }, RatFunc::one());
        expect.add_term(
            TorusBasisMonomial { delta: vec![1], t: vec![1] },
            rf_poly(&[(1, 1), (-1, -1)]),
        );
        assert_eq!(b, expect);
        // A basis monomial converts to itself.
        let m = k_elem(1, 0, 3).unwrap().mul(&GroupAlgElem::k_pow(1, 0, 1));
        let bm = to_basis(&m).unwrap();
        let expect_m = TorusElem::monomial(
            1,
            TorusBasisMonomial { delta: vec![1], t: vec![3] },
            RatFunc::one(),
        );
        assert_eq!(bm, expect_m);
    }

    #[test]
    fn hopf_axioms_on_torus() {
        let mut rng = StdRng::seed_from_u64(99);
        let mut elems: Vec<GroupAlgElem> = Vec::new();
        elems.push(GroupAlgElem::k_pow(1, 0, 1));
        elems.push(GroupAlgElem::k_pow(1, 0, -1));
        for t in 0..=6u32 {
            elems.push(k_elem(1, 0, t).unwrap());
        }
        for _ in 0..50 {
            elems.push(random_elem(&mut rng, 1));
        }
        for x in &elems {
            let d = x.comult();
            // Counit axioms: (eps (x) id) Delta = id = (id (x) eps) Delta.
            let left = d.map_leg(0, |y| GroupAlgElem::scalar(1, y.counit())).mul_legs();
            let right = d.map_leg(1, |y| GroupAlgElem::scalar(1, y.counit())).mul_legs();
            assert_eq!(&left, x);
            assert_eq!(&right, x);
            // Antipode axiom: m (S (x) id) Delta = eps * 1.
            let s = d.map_leg(0, |y| y.antipode()).mul_legs();
            assert_eq!(s, GroupAlgElem::scalar(1, x.counit()));
            // Coassociativity, expanding to three legs both ways.
            let dd1 = {
                let mut out = GroupAlgElem::zero(3);
                for (e, c) in d.terms() {
                    out = out.add(&GroupAlgElem::monomial(3, vec![e[0], e[0], e[1]], c.clone()));
                }
                out
            };
            let dd2 = {
                let mut out = GroupAlgElem::zero(3);
                for (e, c) in d.terms() {
                    out = out.add(&GroupAlgElem::monomial(3, vec![e[0], e[1], e[1]], c.clone()));
                }
                out
            };
            assert_eq!(dd1, dd2);
        }
    }

    #[test]
    fn g_relations_hold_in_group_algebra() {
        // (g5), (g7) and the recombination rule (g8) for t, t' <= 6; (g9)
        // and (g10) are the defining expansions of the binomial generators
        // and enter through kbin.
        let k1 = k_elem(1, 0, 1).unwrap();
        let vminus = rf_poly(&[(1, 1), (-1, -1)]);
        assert_eq!(
            k1.scalar_mul(&vminus),
            GroupAlgElem::k_pow(1, 0, 1).sub(&GroupAlgElem::k_pow(1, 0, -1))
        );
        assert_eq!(
            GroupAlgElem::k_pow(1, 0, 1).mul(&GroupAlgElem::k_pow(1, 0, -1)),
            GroupAlgElem::one(1)
        );
        for t in 1..=6i64 {
            for tp in 0..=6i64 {
                let lhs = k_elem(1, 0, (t + tp) as u32)
                    .unwrap()
                    .scalar_mul(&RatFunc::from_poly(q_binomial(t + tp, t).unwrap()));
                let mut rhs = GroupAlgElem::zero(1);
                for j in 0..=tp {
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    let coeff = &RatFunc::v_pow(t * (tp - j))
                        * &RatFunc::from_poly(q_binomial(t + j - 1, j).unwrap());
                    rhs = rhs.add(
                        &GroupAlgElem::k_pow(1, 0, j)
                            .mul(&k_elem(1, 0, t as u32).unwrap())
                            .mul(&k_elem(1, 0, (tp - j) as u32).unwrap())
                            .scalar_mul(&coeff)
                            .scalar_mul(&RatFunc::from_int(sign)),
                    );
                }
                assert_eq!(lhs, rhs, "(g8) at t={} t'={}", t, tp);
            }
        }
    }

    #[test]
    fn scaled_builders_match_substitution() {
        // (b5)-style identity at general d: (v^d - v^-d) k_{i,1} = K - K^-1.
        for d in 1..=3i64 {
            let k1 = k_elem_scaled(1, 0, 1, d).unwrap();
            let lhs = k1.scalar_mul(&rf_poly(&[(d, 1), (-d, -1)]));
            assert_eq!(lhs, GroupAlgElem::k_pow(1, 0, 1).sub(&GroupAlgElem::k_pow(1, 0, -1)));
        }
        assert_eq!(k_elem_scaled(1, 0, 3, 1).unwrap(), k_elem(1, 0, 3).unwrap());
        // h at scale d uses p_{n,s}(v^d).
        let h = h_elem_scaled(1, 0, 2, 3).unwrap();
        let num = GroupAlgElem::k_pow(1, 0, 4).sub(&GroupAlgElem::one(1));
        let den = (&LaurentPoly::v_pow(6) - &LaurentPoly::v_pow(-6)).scalar_mul(&rat_int(2));
        assert_eq!(h, num.scalar_mul(&RatFunc::new(LaurentPoly::one(), den).unwrap()));
    }
}
