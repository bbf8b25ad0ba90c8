use super::{AlgebraError, GenSymbol, Monomial, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Tag naming the ring a polynomial belongs to. Arithmetic between
/// different rings is rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingId(pub &'static str);

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// Sparse polynomial with exact rational coefficients. Zero coefficients are
/// never stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: RingId,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(ring: RingId) -> Self {
        Polynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: RingId) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: RingId, c: Rational) -> Self {
        Self::term(ring, Monomial::one(), c)
    }

    pub fn term(ring: RingId, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        p.add_term(m, c);
        p
    }

    pub fn gen(ring: RingId, g: GenSymbol) -> Self {
        Self::term(ring, Monomial::gen(g), Rational::one())
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    /// Same terms, relabelled ring.
    pub fn with_ring(mut self, ring: RingId) -> Self {
        self.ring = ring;
        self
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Rational> {
        self.terms
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(ring: RingId, it: I) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
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

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// Adds `c·m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check(other)?;
        let mut out = Polynomial::zero(self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// In-place `self += c·other`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        if c.is_zero() {
            return;
        }
        for (m, k) in &other.terms {
            self.add_term(m.clone(), k * c);
        }
    }

    /// In-place `self += c·m·other`.
    pub fn add_product(&mut self, m: &Monomial, c: &Rational, other: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for (m2, k) in &other.terms {
            self.add_term(m.mul(m2), k * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Largest monomial codimension, `None` for zero.
    pub fn max_codim(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::codim).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Monomial::codim);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Part of codimension exactly `d`.
    pub fn graded_part(&self, d: u32) -> Polynomial {
        self.filter(|m| m.codim() == d)
    }

    /// Drops monomials of codimension above `d`.
    pub fn truncate(&self, d: u32) -> Polynomial {
        self.filter(|m| m.codim() <= d)
    }

    pub fn filter<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Linear extension of a monomial map `m ↦ f(m)`.
    pub fn flat_map<F: FnMut(&Monomial) -> Polynomial>(&self, ring: RingId, mut f: F) -> Polynomial {
        let mut out = Polynomial::zero(ring);
        for (m, c) in &self.terms {
            let img = f(m);
            out.add_scaled(&img.with_ring(ring), c);
        }
        out
    }

    /// Substitutes each generator by a polynomial (ring homomorphism).
    pub fn substitute<F: FnMut(&GenSymbol) -> Polynomial>(&self, ring: RingId, mut f: F) -> Polynomial {
        let mut cache: BTreeMap<GenSymbol, Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(ring);
        for (m, c) in &self.terms {
            let mut acc = Polynomial::constant(ring, c.clone());
            for (g, e) in m.factors() {
                let img = cache.entry(*g).or_insert_with(|| f(g).with_ring(ring)).clone();
                for _ in 0..*e {
                    acc = &acc * &img;
                }
            }
            out.add_scaled(&acc, &Rational::one());
        }
        out
    }

    /// Whether any monomial contains a generator matching `pred`.
    pub fn mentions<F: Fn(&GenSymbol) -> bool>(&self, pred: F) -> bool {
        self.terms.keys().any(|m| m.factors().iter().any(|(g, _)| pred(g)))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{m}")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat};

    const R: RingId = RingId("test");
    const S: RingId = RingId("other");

    fn x(i: u16) -> Polynomial {
        Polynomial::gen(R, GenSymbol::unary(0, 2, i))
    }

    #[test]
    fn additive_inverse_and_collect() {
        assert!((&x(1) - &x(1)).is_zero());
        let p = &x(1).scale(&int(2)) + &x(1).scale(&int(3));
        assert_eq!(p, x(1).scale(&int(5)));
        assert_eq!((&x(1) + &x(2)).len(), 2);
    }

    #[test]
    fn product_and_unit() {
        let p = &x(1) + &x(2).scale(&rat(1, 2));
        assert_eq!(&Polynomial::one(R) * &p, p);
        let sq = &p * &p;
        assert_eq!(sq.len(), 3);
        assert_eq!(sq.coeff(&Monomial::power(GenSymbol::unary(0, 2, 2), 2)), rat(1, 4));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::one(R);
        let b = Polynomial::one(S);
        assert!(matches!(a.checked_add(&b), Err(AlgebraError::RingMismatch { .. })));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let p = &x(1) * &x(2);
        let q = p.substitute(R, |g| {
            if g.indices[0] == 1 {
                &x(3) + &Polynomial::one(R)
            } else {
                Polynomial::gen(R, *g)
            }
        });
        assert_eq!(q, &(&x(3) + &Polynomial::one(R)) * &x(2));
    }
}
