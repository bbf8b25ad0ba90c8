use smallvec::SmallVec;
use std::fmt;

/// An abstract generator of one of the graded rings.
///
/// `kind` is a ring-specific tag handed out by the client module; the derived
/// ordering (kind, then indices) is the canonical order used everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenSymbol {
    pub kind: u16,
    pub indices: [u16; 2],
    pub arity: u8,
    pub codim: u8,
}

impl GenSymbol {
    pub const fn nullary(kind: u16, codim: u8) -> Self {
        GenSymbol {
            kind,
            indices: [0, 0],
            arity: 0,
            codim,
        }
    }

    pub const fn unary(kind: u16, codim: u8, i: u16) -> Self {
        GenSymbol {
            kind,
            indices: [i, 0],
            arity: 1,
            codim,
        }
    }

    /// Ordered pair of indices, stored as given.
    pub const fn binary(kind: u16, codim: u8, i: u16, j: u16) -> Self {
        GenSymbol {
            kind,
            indices: [i, j],
            arity: 2,
            codim,
        }
    }

    /// Unordered pair: indices stored in increasing order.
    pub fn symmetric(kind: u16, codim: u8, i: u16, j: u16) -> Self {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        Self::binary(kind, codim, a, b)
    }

    pub fn idx(&self) -> &[u16] {
        &self.indices[..self.arity as usize]
    }
}

/// A commutative monomial: sorted list of (generator, exponent>0).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(SmallVec<[(GenSymbol, u16); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn gen(g: GenSymbol) -> Self {
        Self::power(g, 1)
    }

    pub fn power(g: GenSymbol, e: u16) -> Self {
        let mut v = SmallVec::new();
        if e > 0 {
            v.push((g, e));
        }
        Monomial(v)
    }

    /// Builds a monomial from arbitrary (generator, exponent) pairs, merging
    /// repeats and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (GenSymbol, u16)>>(it: I) -> Self {
        let mut v: SmallVec<[(GenSymbol, u16); 4]> = it.into_iter().filter(|f| f.1 > 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: SmallVec<[(GenSymbol, u16); 4]> = SmallVec::with_capacity(v.len());
        for (g, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == g => last.1 += e,
                _ => out.push((g, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(GenSymbol, u16)] {
        &self.0
    }

    /// Generators with multiplicity, in canonical order.
    pub fn expanded(&self) -> impl Iterator<Item = GenSymbol> + '_ {
        self.0.iter().flat_map(|&(g, e)| std::iter::repeat_n(g, e as usize))
    }

    pub fn codim(&self) -> u32 {
        self.0.iter().map(|(g, e)| g.codim as u32 * *e as u32).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| *e as u32).sum()
    }

    pub fn exponent(&self, g: &GenSymbol) -> u16 {
        self.0
            .binary_search_by(|f| f.0.cmp(g))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out: SmallVec<[(GenSymbol, u16); 4]> = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, e: u16) -> Monomial {
        Monomial(self.0.iter().map(|&(g, k)| (g, k * e)).collect())
    }

    /// Removes one occurrence of `g`; `None` if absent.
    pub fn remove_one(&self, g: &GenSymbol) -> Option<Monomial> {
        let pos = self.0.iter().position(|f| &f.0 == g)?;
        let mut v = self.0.clone();
        if v[pos].1 == 1 {
            v.remove(pos);
        } else {
            v[pos].1 -= 1;
        }
        Some(Monomial(v))
    }

    /// Splits into (factors satisfying `pred`, the rest).
    pub fn split_by<F: Fn(&GenSymbol) -> bool>(&self, pred: F) -> (Monomial, Monomial) {
        let mut yes = SmallVec::new();
        let mut no = SmallVec::new();
        for f in &self.0 {
            if pred(&f.0) {
                yes.push(*f);
            } else {
                no.push(*f);
            }
        }
        (Monomial(yes), Monomial(no))
    }

    /// Applies a symbol substitution and re-sorts.
    pub fn map_symbols<F: Fn(&GenSymbol) -> GenSymbol>(&self, f: F) -> Monomial {
        Monomial::from_factors(self.0.iter().map(|(g, e)| (f(g), *e)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (n, (g, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            write!(f, "g{}{:?}", g.kind, g.idx())?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_codim() {
        let a = GenSymbol::unary(0, 2, 1);
        let b = GenSymbol::symmetric(2, 2, 3, 1);
        assert_eq!(b.idx(), &[1, 3]);
        let m = Monomial::from_factors([(b, 1), (a, 1), (a, 2)]);
        assert_eq!(m.factors(), &[(a, 3), (b, 1)]);
        assert_eq!(m.codim(), 8);
        assert_eq!(m.mul(&Monomial::gen(b)).exponent(&b), 2);
        assert_eq!(m.remove_one(&b).unwrap(), Monomial::power(a, 3));
    }
}
