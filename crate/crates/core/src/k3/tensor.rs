use super::K3Model;
use crate::algebra::Rational;
use num_traits::{One, Zero};
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

/// Basis of `H*(S, Q)`: unit, NS classes, transcendental classes, point.
/// Labels are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisVector {
    Unit,
    Ns(u16),
    Tr(u16),
    Pt,
}

impl BasisVector {
    /// Codimension (complex degree).
    pub fn codim(self) -> u32 {
        match self {
            BasisVector::Unit => 0,
            BasisVector::Ns(_) | BasisVector::Tr(_) => 1,
            BasisVector::Pt => 2,
        }
    }

    /// Cup product in `H*(S, Q)`, as a multiple of a basis vector.
    pub fn product(self, other: BasisVector, model: &K3Model) -> Option<(BasisVector, Rational)> {
        use BasisVector::*;
        match (self, other) {
            (Unit, x) | (x, Unit) => Some((x, Rational::one())),
            (Ns(a), Ns(b)) => nonzero(model.ns_gram().get(a as usize - 1, b as usize - 1)),
            (Tr(a), Tr(b)) => nonzero(model.tr_gram().get(a as usize - 1, b as usize - 1)),
            _ => None,
        }
    }
}

fn nonzero(c: &Rational) -> Option<(BasisVector, Rational)> {
    if c.is_zero() {
        None
    } else {
        Some((BasisVector::Pt, c.clone()))
    }
}

impl fmt::Display for BasisVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisVector::Unit => write!(f, "1"),
            BasisVector::Ns(k) => write!(f, "ns{k}"),
            BasisVector::Tr(k) => write!(f, "tr{k}"),
            BasisVector::Pt => write!(f, "pt"),
        }
    }
}

/// Element of `H*(S, Q)^{⊗m}` in the tensor basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorClass {
    m: usize,
    terms: BTreeMap<Vec<BasisVector>, Rational>,
}

impl TensorClass {
    pub fn zero(m: usize) -> Self {
        TensorClass {
            m,
            terms: BTreeMap::new(),
        }
    }

    /// The fundamental class `1⊗…⊗1`.
    pub fn one(m: usize) -> Self {
        Self::basis(vec![BasisVector::Unit; m], Rational::one())
    }

    pub fn basis(slots: Vec<BasisVector>, c: Rational) -> Self {
        let mut t = Self::zero(slots.len());
        t.add_term(slots, c);
        t
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<Vec<BasisVector>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, slots: &[BasisVector]) -> Rational {
        self.terms.get(slots).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, slots: Vec<BasisVector>, c: Rational) {
        assert_eq!(slots.len(), self.m, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(slots) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorClass, c: &Rational) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&self, other: &TensorClass) -> TensorClass {
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        out
    }

    pub fn scale(&self, c: &Rational) -> TensorClass {
        let mut out = TensorClass::zero(self.m);
        out.add_scaled(self, c);
        out
    }

    /// Slotwise cup product.
    pub fn mul(&self, other: &TensorClass, model: &K3Model) -> TensorClass {
        assert_eq!(self.m, other.m, "tensor arity mismatch");
        let mut out = TensorClass::zero(self.m);
        for (a, ca) in &self.terms {
            'pairs: for (b, cb) in &other.terms {
                let mut slots = Vec::with_capacity(self.m);
                let mut c = ca * cb;
                for (x, y) in a.iter().zip(b) {
                    match x.product(*y, model) {
                        Some((v, k)) => {
                            slots.push(v);
                            if !k.is_one() {
                                c *= k;
                            }
                        }
                        None => continue 'pairs,
                    }
                }
                out.add_term(slots, c);
            }
        }
        out
    }

    /// Pushforward along the projection forgetting the slots in `drop`:
    /// a term survives only if every dropped slot holds the point class.
    pub fn push_forward(&self, drop: &[usize]) -> TensorClass {
        let keep: Vec<usize> = (0..self.m).filter(|i| !drop.contains(i)).collect();
        let mut out = TensorClass::zero(keep.len());
        for (k, v) in &self.terms {
            if drop.iter().all(|&i| k[i] == BasisVector::Pt) {
                out.add_term(keep.iter().map(|&i| k[i]).collect(), v.clone());
            }
        }
        out
    }

    /// Degree: coefficient of `pt⊗…⊗pt`.
    pub fn degree(&self) -> Rational {
        self.coeff(&vec![BasisVector::Pt; self.m])
    }

    /// Applies a slot permutation: slot `i` of the input moves to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> TensorClass {
        let mut out = TensorClass::zero(self.m);
        for (k, v) in &self.terms {
            let mut slots = vec![BasisVector::Unit; self.m];
            for (i, b) in k.iter().enumerate() {
                slots[perm[i]] = *b;
            }
            out.add_term(slots, v.clone());
        }
        out
    }
}

impl fmt::Display for TensorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (k, v)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let slots: Vec<String> = k.iter().map(|b| b.to_string()).collect();
            write!(f, "{v}*[{}]", slots.join(","))?;
        }
        Ok(())
    }
}
