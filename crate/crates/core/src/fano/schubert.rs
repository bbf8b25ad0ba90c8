use super::{cc, lf, FanoError, KIND_CC, KIND_LF};
use crate::algebra::{GenSymbol, Polynomial, Rational, RingId};
use crate::expr::{expect_arity, int_arg, parse_in, print_canonical, Arg, ExprError, Resolved, SymbolTable};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

/// Columns of the box: partitions `(a, b)` with `4 ≥ a ≥ b ≥ 0`.
pub const BOX: u8 = 4;

pub const GRASS: RingId = RingId("grass");
pub const KIND_S: u16 = 60;

pub fn s(a: u8, b: u8) -> GenSymbol {
    GenSymbol::binary(KIND_S, a + b, a as u16, b as u16)
}

/// An element of `H*(G(2,6), Q)` in the Schubert basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchubertElement {
    terms: BTreeMap<(u8, u8), Rational>,
}

impl SchubertElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::sigma(0, 0)
    }

    /// `σ_{a,b}`; zero outside the box.
    pub fn sigma(a: u8, b: u8) -> Self {
        let mut e = Self::zero();
        if b <= a && a <= BOX {
            e.terms.insert((a, b), Rational::one());
        }
        e
    }

    pub fn terms(&self) -> &BTreeMap<(u8, u8), Rational> {
        &self.terms
    }

    pub fn coeff(&self, a: u8, b: u8) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &SchubertElement, c: &Rational) {
        for (k, v) in &other.terms {
            let e = self.terms.entry(*k).or_insert_with(Rational::zero);
            *e += v * c;
            if e.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    pub fn mul(&self, other: &SchubertElement) -> SchubertElement {
        pieri_multiply(self, other)
    }

    /// Part of codimension `d`.
    pub fn graded_part(&self, d: u8) -> SchubertElement {
        SchubertElement {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.0 + k.1 == d)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

impl std::fmt::Display for SchubertElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let p = Polynomial::from_terms(
            GRASS,
            self.terms.iter().map(|((a, b), c)| {
                let m = if (*a, *b) == (0, 0) {
                    crate::algebra::Monomial::one()
                } else {
                    crate::algebra::Monomial::gen(s(*a, *b))
                };
                (m, c.clone())
            }),
        );
        f.write_str(&print_canonical(&p, &GrassRing))
    }
}

/// `σ_k · σ_{a,b}` for a special class `σ_k` (one row of `k` boxes): add
/// `k` boxes, no two in the same column.
fn pieri(k: u8, (a, b): (u8, u8)) -> Vec<(u8, u8)> {
    let total = a + b + k;
    (a..=BOX)
        .filter_map(|x| {
            let y = total.checked_sub(x)?;
            (b <= y && y <= a).then_some((x, y))
        })
        .collect()
}

fn partitions() -> impl Iterator<Item = (u8, u8)> {
    (0..=BOX).flat_map(|a| (0..=a).map(move |b| (a, b)))
}

type Table = HashMap<((u8, u8), (u8, u8)), Vec<(u8, u8)>>;

/// Products of basis classes. On `G(2,n)`, `σ_{c,d} = σ_{1,1}^d·σ_{c−d}` and
/// `σ_{1,1}` shifts both rows, so every structure constant is 0 or 1.
fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Table::new();
        for p in partitions() {
            for (c, d) in partitions() {
                let out = pieri(c - d, p)
                    .into_iter()
                    .filter(|(x, _)| x + d <= BOX)
                    .map(|(x, y)| (x + d, y + d))
                    .collect();
                t.insert((p, (c, d)), out);
            }
        }
        t
    })
}

/// Exact product in `H*(G(2,6))`.
pub fn pieri_multiply(x: &SchubertElement, y: &SchubertElement) -> SchubertElement {
    let t = table();
    let mut out = SchubertElement::zero();
    for (p, u) in &x.terms {
        for (q, v) in &y.terms {
            let uv = u * v;
            for r in &t[&(*p, *q)] {
                out.add_scaled(&SchubertElement::sigma(r.0, r.1), &uv);
            }
        }
    }
    out
}

/// Degree: the coefficient of the point class `σ_{4,4}`.
pub fn integrate_grass(e: &SchubertElement) -> Rational {
    e.coeff(BOX, BOX)
}

/// Image of a polynomial in `l = σ_1` and `cc = σ_{1,1}`.
pub fn schubert_of_fano(p: &Polynomial) -> Result<SchubertElement, FanoError> {
    let s1 = SchubertElement::sigma(1, 0);
    let s11 = SchubertElement::sigma(1, 1);
    let mut out = SchubertElement::zero();
    for (m, c) in p.terms() {
        let mut acc = SchubertElement::one();
        for (g, e) in m.factors() {
            let base = match g.kind {
                KIND_LF => &s1,
                KIND_CC => &s11,
                _ => return Err(FanoError::Generator(super::render_fano(g))),
            };
            for _ in 0..*e {
                acc = acc.mul(base);
            }
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

/// Inverse of [`schubert_of_fano`] on the subring generated by `σ_1, σ_{1,1}`,
/// which is all of `H*(G(2,6))`: `σ_{a,b} = σ_{1,1}^b·σ_{a−b}` and the special
/// classes satisfy `σ_k = σ_1·σ_{k−1} − σ_{1,1}·σ_{k−2}`.
pub fn fano_of_schubert(e: &SchubertElement) -> Polynomial {
    let l = Polynomial::gen(super::FANO, lf());
    let c = Polynomial::gen(super::FANO, cc());
    let mut special = vec![Polynomial::one(super::FANO), l.clone()];
    for k in 2..=BOX as usize {
        let next = &(&l * &special[k - 1]) - &(&c * &special[k - 2]);
        special.push(next);
    }
    let mut out = Polynomial::zero(super::FANO);
    for ((a, b), v) in &e.terms {
        let p = &c.pow(*b as u32) * &special[(a - b) as usize];
        out.add_scaled(&p, v);
    }
    out
}

/// Symbol table for `H*(G(2,6))`: `s(a,b)` is `σ_{a,b}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct GrassRing;

impl GrassRing {
    pub fn parse(&self, text: &str) -> Result<Polynomial, ExprError> {
        parse_in(text, self)
    }

    /// Multiplies out a parsed expression.
    pub fn evaluate(&self, p: &Polynomial) -> SchubertElement {
        let mut out = SchubertElement::zero();
        for (m, c) in p.terms() {
            let mut acc = SchubertElement::one();
            for g in m.expanded() {
                acc = acc.mul(&SchubertElement::sigma(g.indices[0] as u8, g.indices[1] as u8));
            }
            out.add_scaled(&acc, c);
        }
        out
    }
}

impl SymbolTable for GrassRing {
    fn ring(&self) -> RingId {
        GRASS
    }

    fn resolve(&self, name: &str, args: &[Arg]) -> Resolved {
        if name != "s" {
            return Resolved::Unknown;
        }
        let r = (|| -> Result<Polynomial, Resolved> {
            expect_arity(args, 2)?;
            let a = int_arg(args, 0, 0, BOX as i64)? as u8;
            let b = int_arg(args, 1, 0, a as i64)? as u8;
            if a == 0 {
                return Ok(Polynomial::one(GRASS));
            }
            Ok(Polynomial::gen(GRASS, s(a, b)))
        })();
        match r {
            Ok(p) => Resolved::Value(p),
            Err(e) => e,
        }
    }

    fn render(&self, g: &GenSymbol) -> String {
        format!("s({},{})", g.indices[0], g.indices[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn pieri_examples() {
        let s1 = SchubertElement::sigma(1, 0);
        let sq = s1.mul(&s1);
        assert_eq!(sq.to_string(), "s(1,1) + s(2,0)");
        let s11 = SchubertElement::sigma(1, 1);
        let mut p = SchubertElement::one();
        for _ in 0..4 {
            p = p.mul(&s11);
        }
        assert_eq!(p, SchubertElement::sigma(4, 4));
        let mut p = SchubertElement::one();
        for _ in 0..8 {
            p = p.mul(&s1);
        }
        assert_eq!(integrate_grass(&p), int(14));
        assert!(SchubertElement::sigma(4, 3).mul(&s11).is_zero());
    }

    #[test]
    fn round_trip_to_l_and_cc() {
        for (a, b) in partitions() {
            let e = SchubertElement::sigma(a, b);
            assert_eq!(schubert_of_fano(&fano_of_schubert(&e)).unwrap(), e);
        }
    }

    #[test]
    fn grass_parse() {
        let r = GrassRing;
        let p = r.parse("s(1,0)^8").unwrap();
        assert_eq!(integrate_grass(&r.evaluate(&p)), int(14));
        assert!(r.parse("s(5,0)").is_err());
        assert!(r.parse("s(1,2)").is_err());
        assert_eq!(r.parse("s(0,0)").unwrap(), Polynomial::one(GRASS));
    }
}
