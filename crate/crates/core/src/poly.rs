//! Sparse multivariate polynomials over F_p.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is graded
//! reverse lexicographic, so iteration order is canonical and the leading
//! term is the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{self, Prime};

pub type Exponents = SmallVec<[u32; 4]>;

/// Exponent vector of a monomial, ordered graded reverse lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_exponents(e: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Index of the single variable if this is a pure power `x_i^k`, `k > 0`.
    pub fn pure_power_variable(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Exponents {
        &mut self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                // smaller exponent in the last differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Printed variable prefix: `x` for functions on X, `y` for the Frobenius twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarName {
    X,
    Y,
}

impl VarName {
    pub fn prefix(self) -> char {
        match self {
            VarName::X => 'x',
            VarName::Y => 'y',
        }
    }
}

/// `F_p[v_0, …, v_{n-1}]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    p: Prime,
    nvars: usize,
    var: VarName,
}

impl Ring {
    pub fn new(p: Prime, nvars: usize, var: VarName) -> Self {
        Ring { p, nvars, var }
    }

    pub fn x(p: Prime, nvars: usize) -> Self {
        Ring::new(p, nvars, VarName::X)
    }

    pub fn y(p: Prime, nvars: usize) -> Self {
        Ring::new(p, nvars, VarName::Y)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn p(&self) -> u32 {
        self.p.get()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var_name(&self) -> VarName {
        self.var
    }

    /// Same modulus and variable count with a different printed prefix.
    pub fn with_var_name(&self, var: VarName) -> Ring {
        Ring { var, ..*self }
    }

    pub fn with_nvars(&self, nvars: usize) -> Ring {
        Ring { nvars, ..*self }
    }

    pub fn zero(&self) -> SparsePolynomial {
        SparsePolynomial::zero(*self)
    }

    pub fn one(&self) -> SparsePolynomial {
        SparsePolynomial::constant(*self, 1)
    }

    pub fn constant(&self, c: i64) -> SparsePolynomial {
        SparsePolynomial::constant(*self, field::reduce_signed(c, self.p()))
    }

    pub fn var(&self, i: usize) -> SparsePolynomial {
        assert!(i < self.nvars, "variable {i} out of range");
        SparsePolynomial::monomial(*self, Monomial::var(self.nvars, i), 1)
    }

    pub fn vars(&self) -> Vec<SparsePolynomial> {
        (0..self.nvars).map(|i| self.var(i)).collect()
    }

    pub fn parse(&self, text: &str) -> Result<SparsePolynomial> {
        crate::parse::parse_polynomial(*self, text)
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.var.prefix();
        write!(f, "F_{}[", self.p)?;
        for i in 0..self.nvars {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}{i}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SparsePolynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, u32>,
}

impl SparsePolynomial {
    pub fn zero(ring: Ring) -> Self {
        SparsePolynomial { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, c: u32) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars), c)
    }

    pub fn monomial(ring: Ring, m: Monomial, c: u32) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars);
        let mut terms = BTreeMap::new();
        let c = c % ring.p();
        if c != 0 {
            terms.insert(m, c);
        }
        SparsePolynomial { ring, terms }
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let mut f = Self::zero(ring);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn p(&self) -> u32 {
        self.ring.p()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` when the polynomial is the constant `c` (including 0).
    pub fn as_constant(&self) -> Option<u32> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then_some(*c)
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, c)| (m, *c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest exponent of variable `i` appearing.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[i]).max().unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn support_variables(&self) -> Vec<usize> {
        (0..self.ring.nvars).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: u32) {
        let p = self.p();
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field::add(*o.get(), c, p);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let p = self.p();
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), field::neg(c, p));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ring.check_same(&other.ring)?;
        let p = self.p();
        let mut out = Self::zero(self.ring);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.mul(mb), field::mul(ca, cb, p));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p();
        let c = c % p;
        if c == 0 {
            return Self::zero(self.ring);
        }
        SparsePolynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), field::mul(*a, c, p))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Self {
        let p = self.p();
        let c = c % p;
        if c == 0 {
            return Self::zero(self.ring);
        }
        SparsePolynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), field::mul(*x, c, p))).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        let n = self.ring.nvars;
        if i >= n {
            return Err(Error::VariableOutOfRange { index: i, nvars: n });
        }
        let p = self.p();
        let mut out = Self::zero(self.ring);
        for (m, c) in self.terms() {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[i] -= 1;
            out.add_term(dm, field::mul(c, e % p, p));
        }
        Ok(out)
    }

    /// `∂f/∂v_i`; panics on an out-of-range index.
    pub fn diff(&self, i: usize) -> Self {
        self.partial_derivative(i).expect("variable index in range")
    }

    /// Relabels the variables x_i ↦ y_i. Over a prime field the Frobenius on
    /// coefficients is the identity, so only the printed ring changes.
    pub fn p_power_substitute(&self) -> Self {
        self.in_ring(self.ring.with_var_name(VarName::Y))
    }

    /// Reinterprets the same terms in a ring with identical modulus and
    /// variable count.
    pub fn in_ring(&self, ring: Ring) -> Self {
        assert_eq!(ring.nvars, self.ring.nvars);
        assert_eq!(ring.p, self.ring.p);
        SparsePolynomial { ring, terms: self.terms.clone() }
    }

    /// Embeds into a ring with more variables (new variables appended).
    pub fn extend_vars(&self, ring: Ring) -> Self {
        assert!(ring.nvars >= self.ring.nvars);
        assert_eq!(ring.p, self.ring.p);
        let mut out = Self::zero(ring);
        for (m, c) in self.terms() {
            let mut e: Exponents = m.exponents().iter().copied().collect();
            e.resize(ring.nvars, 0);
            out.add_term(Monomial(e), c);
        }
        out
    }

    /// Substitutes `images[i]` for variable `i`; the result lives in the
    /// images' common ring.
    pub fn substitute(&self, images: &[SparsePolynomial]) -> Result<Self> {
        if images.len() != self.ring.nvars {
            return Err(Error::Shape(format!(
                "substitution needs {} images, got {}",
                self.ring.nvars,
                images.len()
            )));
        }
        let target = match images.first() {
            Some(f) => f.ring,
            None => {
                return Ok(SparsePolynomial::constant(self.ring, self.as_constant().unwrap_or(0)))
            }
        };
        for f in images {
            target.check_same(&f.ring)?;
        }
        let mut out = SparsePolynomial::zero(target);
        for (m, c) in self.terms() {
            let mut t = SparsePolynomial::constant(target, c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e as u64);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[u32]) -> u32 {
        let p = self.p();
        let mut acc = 0;
        for (m, c) in self.terms() {
            let mut t = c;
            for (i, &e) in m.exponents().iter().enumerate() {
                t = field::mul(t, field::pow(point[i], e as u64, p), p);
            }
            acc = field::add(acc, t, p);
        }
        acc
    }

    /// Makes the leading coefficient 1 (no-op on zero).
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(field::inv(c, self.p())),
            None => self.clone(),
        }
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let prefix = self.ring.var.prefix();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write_term(f, prefix, *c, m)?;
        }
        Ok(())
    }
}

pub(crate) fn write_term(f: &mut impl fmt::Write, prefix: char, c: u32, m: &Monomial) -> fmt::Result {
    let mut first = true;
    if c != 1 || m.is_one() {
        write!(f, "{c}")?;
        first = false;
    }
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{prefix}{i}")?;
        } else {
            write!(f, "{prefix}{i}^{e}")?;
        }
    }
    Ok(())
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&SparsePolynomial> for &SparsePolynomial {
            type Output = SparsePolynomial;
            fn $method(self, rhs: &SparsePolynomial) -> SparsePolynomial {
                self.$checked(rhs).expect("polynomials from the same ring")
            }
        }
        impl std::ops::$tr<SparsePolynomial> for SparsePolynomial {
            type Output = SparsePolynomial;
            fn $method(self, rhs: SparsePolynomial) -> SparsePolynomial {
                (&self).$checked(&rhs).expect("polynomials from the same ring")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        self.scale(self.p() - 1)
    }
}

impl std::ops::Neg for SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        -&self
    }
}

/// Applies `poly_arith` in the `{add, mul}` form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
}

pub fn poly_arith(a: &SparsePolynomial, b: &SparsePolynomial, op: ArithOp) -> Result<SparsePolynomial> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Mul => a.checked_mul(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u32, n: usize) -> Ring {
        Ring::x(Prime::new(p).unwrap(), n)
    }

    #[test]
    fn difference_of_squares_mod_3() {
        let r = ring(3, 1);
        let x = r.var(0);
        let f = poly_arith(&(&x + &r.one()), &(&x - &r.one()), ArithOp::Mul).unwrap();
        assert_eq!(f, r.parse("x0^2 + 2").unwrap());
        assert_eq!(f.to_string(), "x0^2 + 2");
    }

    #[test]
    fn annihilator() {
        let r = ring(5, 2);
        let f = r.parse("x0^3*x1 + 4").unwrap();
        assert!((&f * &r.zero()).is_zero());
    }

    #[test]
    fn freshmans_dream_in_char_3() {
        let r = ring(3, 2);
        let s = r.parse("x0 + x1").unwrap();
        assert_eq!(s.pow(3), r.parse("x0^3 + x1^3").unwrap());
    }

    #[test]
    fn derivatives() {
        let r = ring(3, 2);
        assert!(r.parse("x0^3").unwrap().diff(0).is_zero());
        assert_eq!(r.parse("x0^2 + x0*x1").unwrap().diff(0), r.parse("2*x0 + x1").unwrap());
        assert!(r.parse("x0^2").unwrap().diff(1).is_zero());
        assert!(matches!(
            r.parse("x0").unwrap().partial_derivative(2),
            Err(Error::VariableOutOfRange { index: 2, nvars: 2 })
        ));
    }

    #[test]
    fn frobenius_twist_relabels() {
        let r = ring(3, 1);
        let f = r.parse("x0^2").unwrap().p_power_substitute();
        assert_eq!(f.ring().var_name(), VarName::Y);
        assert_eq!(f.to_string(), "y0^2");
        let r5 = ring(5, 1);
        assert_eq!(r5.parse("x0^3 + 2*x0").unwrap().p_power_substitute().to_string(), "y0^3 + 2*y0");
        assert!(r5.zero().p_power_substitute().is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring(3, 1).one();
        let b = ring(5, 1).one();
        assert!(matches!(a.checked_add(&b), Err(Error::RingMismatch(..))));
        let c = ring(3, 2).one();
        assert!(a.checked_mul(&c).is_err());
    }

    #[test]
    fn grevlex_order() {
        let m = |e: &[u32]| Monomial::from_exponents(e);
        // degree first
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        // x0*x2 < x1^2 in grevlex (smaller last exponent wins)
        assert!(m(&[1, 0, 1]) < m(&[0, 2, 0]));
        assert!(m(&[2, 0, 0]) > m(&[0, 2, 0]));
        assert!(m(&[1, 1, 0]) > m(&[0, 2, 0]) || m(&[1, 1, 0]) < m(&[0, 2, 0]));
        assert!(m(&[1, 1, 0]) > m(&[1, 0, 1]));
    }

    #[test]
    fn substitution_and_evaluation() {
        let r = ring(7, 2);
        let f = r.parse("x0^2*x1 + 3").unwrap();
        let g = f.substitute(&[r.parse("x1").unwrap(), r.parse("x0 + 1").unwrap()]).unwrap();
        assert_eq!(g, r.parse("x1^2*x0 + x1^2 + 3").unwrap());
        assert_eq!(f.evaluate(&[2, 3]), (4 * 3 + 3) % 7);
    }
}
