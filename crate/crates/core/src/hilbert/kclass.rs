use crate::algebra::{int, Polynomial, Rational, RingId};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A K-theory class in Chern-character coordinates: formal rank plus the
/// graded pieces `ch_1..ch_top`, each a homogeneous polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClass {
    rank: Rational,
    ch: Vec<Polynomial>,
    ring: RingId,
}

fn factorial(k: u32) -> Rational {
    Rational::from_integer((1..=k as u64).fold(BigInt::one(), |a, b| a * b))
}

impl KClass {
    pub fn zero(ring: RingId, top: u32) -> Self {
        KClass {
            rank: Rational::zero(),
            ch: vec![Polynomial::zero(ring); top as usize],
            ring,
        }
    }

    /// Trivial bundle of rank `r`.
    pub fn trivial(ring: RingId, r: i64, top: u32) -> Self {
        KClass {
            rank: int(r),
            ..Self::zero(ring, top)
        }
    }

    /// From explicit components; `ch[k-1]` is `ch_k`.
    pub fn from_ch(ring: RingId, rank: Rational, ch: Vec<Polynomial>) -> Self {
        KClass { rank, ch, ring }
    }

    /// Line bundle with first Chern class `t`: `ch = exp(t)`.
    pub fn line(t: &Polynomial, top: u32) -> Self {
        let ring = t.ring();
        let mut ch = Vec::with_capacity(top as usize);
        let mut pow = Polynomial::one(ring);
        for k in 1..=top {
            pow = &pow * t;
            ch.push(pow.scale(&(Rational::one() / factorial(k))));
        }
        KClass {
            rank: Rational::one(),
            ch,
            ring,
        }
    }

    /// Newton's identities: Chern classes `c[k-1] = c_k` to Chern character.
    pub fn from_chern(ring: RingId, rank: Rational, c: &[Polynomial], top: u32) -> Self {
        let e = |k: usize| -> Polynomial {
            c.get(k.wrapping_sub(1))
                .cloned()
                .unwrap_or_else(|| Polynomial::zero(ring))
        };
        // power sums p_k = k! ch_k
        let mut p: Vec<Polynomial> = vec![Polynomial::zero(ring)];
        for k in 1..=top as usize {
            let mut pk = e(k).scale(&int(if k % 2 == 1 { k as i64 } else { -(k as i64) }));
            for i in 1..k {
                let term = &e(i) * &p[k - i];
                let sign = if i % 2 == 1 { int(1) } else { int(-1) };
                pk.add_scaled(&term, &sign);
            }
            p.push(pk);
        }
        let ch = (1..=top as usize)
            .map(|k| p[k].scale(&(Rational::one() / factorial(k as u32))))
            .collect();
        KClass { rank, ch, ring }
    }

    pub fn rank(&self) -> &Rational {
        &self.rank
    }

    pub fn top(&self) -> u32 {
        self.ch.len() as u32
    }

    /// `ch_k` (`ch_0` is the rank).
    pub fn ch(&self, k: u32) -> Polynomial {
        if k == 0 {
            return Polynomial::constant(self.ring, self.rank.clone());
        }
        self.ch
            .get(k as usize - 1)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.ring))
    }

    /// Chern classes `c_1..c_top` by Newton's identities.
    pub fn chern(&self) -> Vec<Polynomial> {
        self.chern_with(|p| p)
    }

    /// As [`KClass::chern`], simplifying every intermediate product with `f`.
    pub fn chern_with<F: Fn(Polynomial) -> Polynomial>(&self, f: F) -> Vec<Polynomial> {
        let top = self.top() as usize;
        let p: Vec<Polynomial> = (0..=top)
            .map(|k| self.ch(k as u32).scale(&factorial(k as u32)))
            .collect();
        let mut e: Vec<Polynomial> = vec![Polynomial::one(self.ring)];
        for k in 1..=top {
            let mut acc = Polynomial::zero(self.ring);
            for i in 1..=k {
                let sign = if i % 2 == 1 { int(1) } else { int(-1) };
                acc.add_scaled(&f(&e[k - i] * &p[i]), &sign);
            }
            e.push(f(acc.scale(&(Rational::one() / int(k as i64)))));
        }
        e.remove(0);
        e
    }

    pub fn add(&self, other: &KClass) -> KClass {
        let top = self.top().max(other.top());
        KClass {
            rank: &self.rank + &other.rank,
            ch: (1..=top).map(|k| &self.ch(k) + &other.ch(k)).collect(),
            ring: self.ring,
        }
    }

    pub fn negate(&self) -> KClass {
        KClass {
            rank: -self.rank.clone(),
            ch: self.ch.iter().map(|p| -p).collect(),
            ring: self.ring,
        }
    }

    pub fn sub(&self, other: &KClass) -> KClass {
        self.add(&other.negate())
    }

    /// Dual class: odd components change sign.
    pub fn dual(&self) -> KClass {
        KClass {
            rank: self.rank.clone(),
            ch: self
                .ch
                .iter()
                .enumerate()
                .map(|(i, p)| if i % 2 == 0 { -p } else { p.clone() })
                .collect(),
            ring: self.ring,
        }
    }

    /// Tensor product, truncated at the smaller of the two tops.
    pub fn tensor(&self, other: &KClass) -> KClass {
        self.tensor_with(other, |p| p)
    }

    pub fn tensor_with<F: Fn(Polynomial) -> Polynomial>(&self, other: &KClass, f: F) -> KClass {
        let top = self.top().min(other.top());
        let ch = (1..=top)
            .map(|k| {
                let mut acc = Polynomial::zero(self.ring);
                for i in 0..=k {
                    acc = &acc + &(&self.ch(i) * &other.ch(k - i));
                }
                f(acc)
            })
            .collect();
        KClass {
            rank: &self.rank * &other.rank,
            ch,
            ring: self.ring,
        }
    }

    /// Tensor with the line bundle of first Chern class `t`.
    pub fn tensor_line(&self, t: &Polynomial) -> KClass {
        self.tensor(&KClass::line(t, self.top()))
    }

    /// Applies `f` to every component.
    pub fn map<F: Fn(&Polynomial) -> Polynomial>(&self, f: F) -> KClass {
        KClass {
            rank: self.rank.clone(),
            ch: self.ch.iter().map(f).collect(),
            ring: self.ring,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GenSymbol, Polynomial};

    const R: RingId = RingId("k");

    fn x(i: u16, codim: u8) -> Polynomial {
        Polynomial::gen(R, GenSymbol::unary(90, codim, i))
    }

    #[test]
    fn line_class() {
        let t = x(1, 1);
        let k = KClass::line(&t, 3);
        assert_eq!(k.ch(1), t);
        assert_eq!(k.ch(2), t.pow(2).scale(&Rational::new(1.into(), 2.into())));
        assert_eq!(k.chern()[0], t);
        assert!(k.chern()[1].is_zero());
    }

    #[test]
    fn newton_roundtrip() {
        let c = vec![x(1, 1), x(2, 2)];
        let k = KClass::from_chern(R, int(2), &c, 4);
        // ch_2 = (c1^2 - 2 c2)/2
        let want = (&c[0].pow(2) - &c[1].scale(&int(2))).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(k.ch(2), want);
        let back = k.chern();
        assert_eq!(back[0], c[0]);
        assert_eq!(back[1], c[1]);
        assert!(back[2].is_zero() && back[3].is_zero());
    }

    #[test]
    fn dual_and_rank() {
        let k = KClass::from_chern(R, int(3), &[x(1, 1), x(2, 2), x(3, 3)], 3);
        assert_eq!(k.dual().dual(), k);
        let l = KClass::line(&x(4, 1), 3);
        assert_eq!(k.tensor(&l).rank(), &int(3));
        assert_eq!(k.tensor(&k).rank(), &int(9));
        // c(E^∨)_i = (-1)^i c_i(E)
        let d = k.dual().chern();
        assert_eq!(d[0], -&x(1, 1));
        assert_eq!(d[1], x(2, 2));
        assert_eq!(d[2], -&x(3, 3));
    }
}
