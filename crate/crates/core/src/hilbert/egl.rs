use super::kclass::KClass;
use super::partition::SetPartition;
use super::{ci, co, ct, ell, HilbertError, HILB, KIND_CI, KIND_CO, KIND_CT, KIND_ELL, KIND_LH};
use crate::algebra::{int, GenSymbol, Monomial, Polynomial, Rational};
use crate::bv::{self, is_bv_kind, BvRing, BV};
use crate::k3::K3Model;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

type Subst = Arc<HashMap<GenSymbol, Polynomial>>;
type MemoKey = (u16, SetPartition, u16, Monomial);

/// Evaluates pullbacks `E_μ^*` of tautological classes. Holds the K3
/// rules used to simplify intermediate classes and memo tables keyed by
/// level, partition, number of marked points and monomial.
pub struct HilbertEngine {
    bv: BvRing,
    subst: RwLock<HashMap<(u16, u16), Subst>>,
    sigma: RwLock<HashMap<(u16, u16), Arc<Vec<Polynomial>>>>,
    memo: RwLock<HashMap<MemoKey, Polynomial>>,
}

impl Default for HilbertEngine {
    fn default() -> Self {
        Self::new(BvRing::k3(1))
    }
}

impl HilbertEngine {
    /// The rules in `bv` must be those of a K3 surface (`χ = 24`); only
    /// its NS form is a free parameter.
    pub fn new(bv: BvRing) -> Self {
        HilbertEngine {
            bv,
            subst: RwLock::default(),
            sigma: RwLock::default(),
            memo: RwLock::default(),
        }
    }

    /// K3 rules with the NS lattice of `model`.
    pub fn for_model(model: &K3Model) -> Self {
        Self::new(BvRing::k3_with_ns(1, model))
    }

    pub fn bv(&self) -> &BvRing {
        &self.bv
    }

    fn nf(&self, p: Polynomial) -> Polynomial {
        self.bv.normalize(&p)
    }

    fn g(s: GenSymbol) -> Polynomial {
        Polynomial::gen(HILB, s)
    }

    fn diag_class(&self, r: u16, i: u16, top: u32) -> KClass {
        // ch(O_Δ) = Δ_*(td(S)^{-1}) = D - 2·o·o
        let mut ch = vec![Polynomial::zero(HILB); top as usize];
        if top >= 2 {
            ch[1] = Self::g(bv::d(r, i));
        }
        if top >= 4 {
            ch[3] = (&Self::g(bv::o(r)) * &Self::g(bv::o(i))).scale(&int(-2));
        }
        KClass::from_ch(HILB, Rational::zero(), ch)
    }

    fn tangent_surface(&self, r: u16, top: u32) -> KClass {
        let mut ch = vec![Polynomial::zero(HILB); top as usize];
        if top >= 2 {
            ch[1] = Self::g(bv::o(r)).scale(&int(-24));
        }
        KClass::from_ch(HILB, int(2), ch)
    }

    fn ideal_class(&self, level: u16, i: u16, top: u32) -> KClass {
        if level == 0 {
            return KClass::trivial(HILB, 1, top);
        }
        let c: Vec<Polynomial> = (1..=2 * level + 2).map(|k| Self::g(ci(k, i))).collect();
        KClass::from_chern(HILB, Rational::one(), &c, top)
    }

    /// Images of the generators of level `n ≥ 1` with `l` marked points
    /// under `ψ^*`, written in the generators of level `n − 1` with the
    /// residual point as marked point `l + 1` and `ell` for the tautological
    /// line bundle.
    fn substitution(&self, n: u16, l: u16) -> Subst {
        if let Some(s) = self.subst.read().expect("lock").get(&(n, l)) {
            return Arc::clone(s);
        }
        let r = l + 1;
        let prev = n - 1;
        let nf = |p: Polynomial| self.nf(p);
        let mut map = HashMap::new();

        let top_t = 2 * n as u32;
        let tangent_prev = KClass::from_chern(
            HILB,
            int(2 * prev as i64),
            &(1..=2 * prev).map(|k| Self::g(ct(k))).collect::<Vec<_>>(),
            top_t,
        );
        // T_n − T_{n−1} = χ(I, L·O_x) + χ(L·O_x, I) − χ(O_x, O_x); the middle
        // term is the Serre dual of the first since ω_S is trivial.
        let ideal_r = self.ideal_class(prev, r, top_t);
        let line_t = KClass::line(&Self::g(ell()), top_t);
        let coline_t = KClass::line(&-&Self::g(ell()), top_t);
        let tangent = tangent_prev
            .add(&line_t.tensor_with(&ideal_r.dual(), nf))
            .add(&coline_t.tensor_with(&ideal_r, nf))
            .add(&self.tangent_surface(r, top_t))
            .sub(&KClass::trivial(HILB, 2, top_t));
        for (k, c) in tangent.chern_with(nf).into_iter().enumerate() {
            map.insert(ct(k as u16 + 1), c);
        }

        let ellp = Self::g(ell());
        for k in 1..=n {
            let mut img = if k <= prev {
                Self::g(co(k))
            } else {
                Polynomial::zero(HILB)
            };
            let lower = if k == 1 {
                Polynomial::one(HILB)
            } else {
                Self::g(co(k - 1))
            };
            img = &img + &(&ellp * &lower);
            map.insert(co(k), img);
        }

        let top_i = 2 * n as u32 + 2;
        let line_i = KClass::line(&ellp, top_i);
        for i in 1..=l {
            let ideal = self
                .ideal_class(prev, i, top_i)
                .sub(&line_i.tensor_with(&self.diag_class(r, i, top_i), nf));
            for (k, c) in ideal.chern_with(nf).into_iter().enumerate() {
                map.insert(ci(k as u16 + 1, i), c);
            }
        }
        let s = Arc::new(map);
        self.subst.write().expect("lock").insert((n, l), Arc::clone(&s));
        s
    }

    /// `σ_*(ell^a)` for `a = 0..=top` at level `n`: `(−1)^a c_a(−I_{n−1})`
    /// on the residual point `l + 1`.
    fn sigma(&self, n: u16, l: u16, top: usize) -> Arc<Vec<Polynomial>> {
        if let Some(s) = self.sigma.read().expect("lock").get(&(n, l)) {
            if s.len() > top {
                return Arc::clone(s);
            }
        }
        let r = l + 1;
        let c: Vec<Polynomial> = (0..=2 * n)
            .map(|k| {
                if k == 0 {
                    Polynomial::one(HILB)
                } else {
                    Self::g(ci(k, r))
                }
            })
            .collect();
        let out: Vec<Polynomial> = self
            .inverse_series(&c, top)
            .into_iter()
            .enumerate()
            .map(|(a, p)| if a % 2 == 1 { -&p } else { p })
            .collect();
        let out = Arc::new(out);
        self.sigma.write().expect("lock").insert((n, l), Arc::clone(&out));
        out
    }

    /// Degree pieces `0..=top` of `1 / c` for a total class `c` with `c[0] = 1`.
    fn inverse_series(&self, c: &[Polynomial], top: usize) -> Vec<Polynomial> {
        let mut s: Vec<Polynomial> = vec![Polynomial::one(HILB)];
        for k in 1..=top {
            let mut acc = Polynomial::zero(HILB);
            for j in 1..=k.min(c.len() - 1) {
                acc.add_scaled(&(&c[j] * &s[k - j]), &int(-1));
            }
            s.push(self.nf(acc));
        }
        s
    }

    /// Segre classes `s_0..=s_top` of the normal bundle of the universal
    /// family `Z_{n−1} ⊂ S^[n−1] × S`, restricted along `S^[n−1,n−2] → Z_{n−1}`
    /// and written in the step variables of level `n − 1` (residual `l + 1`).
    /// In K-theory the normal bundle is `T_S + L^∨·I_{n−2} − 1`.
    fn normal_segre(&self, level: u16, l: u16, top: usize) -> Vec<Polynomial> {
        let r = l + 1;
        let t = (top as u32).max(1);
        let nf = |p: Polynomial| self.nf(p);
        let coline = KClass::line(&-&Self::g(ell()), t);
        let normal = self
            .tangent_surface(r, t)
            .add(&coline.tensor_with(&self.ideal_class(level - 1, r, t), nf))
            .sub(&KClass::trivial(HILB, 1, t));
        let mut c = vec![Polynomial::one(HILB)];
        c.extend(normal.chern_with(nf));
        self.inverse_series(&c, top)
    }

    /// `ψ^*` at level `n` with `l` marked points: a polynomial in `ell`,
    /// level `n − 1` atoms and BV classes on `1..=l+1`.
    fn psi(&self, p: &Polynomial, n: u16, l: u16) -> Polynomial {
        let cap = 2 * (n + l) as u32;
        let subst = self.substitution(n, l);
        let mut total = Polynomial::zero(HILB);
        for (mono, c) in p.terms() {
            total.add_scaled(&self.substitute_monomial(&subst, mono, cap), c);
        }
        total
    }

    /// `ψ^*` of a class at level `n` with `l` marked points, split by powers
    /// of `ell`: entry `a` is the coefficient `Q_a` of `ell^a`.
    pub fn egl_substitute(&self, p: &Polynomial, n: u16, l: u16) -> Vec<Polynomial> {
        assert!(n >= 1, "level must be positive");
        split_ell(&self.psi(p, n, l))
    }

    /// `σ_*(ell^a)` at level `n` with `l` marked points.
    pub fn sigma_pushforward(&self, n: u16, l: u16, a: usize) -> Polynomial {
        self.sigma(n, l, a)[a].clone()
    }

    fn substitute_monomial(&self, subst: &HashMap<GenSymbol, Polynomial>, mono: &Monomial, cap: u32) -> Polynomial {
        let mut acc = Polynomial::one(HILB);
        for g in mono.expanded() {
            let img = match subst.get(&g) {
                Some(img) => img,
                None if is_bv_kind(g.kind) => &Self::g(g),
                None => return Polynomial::zero(HILB),
            };
            acc = self.nf(&acc * img).truncate(cap);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Pullback of a pure tautological monomial (no BV factors) at level
    /// `n` along `E_μ × Id_{S^l}`; a normalized BV polynomial on `S^(m+l)`.
    /// `μ` must have contiguous blocks.
    fn pullback_atoms(&self, n: u16, mu: &SetPartition, l: u16, atoms: &Monomial) -> Polynomial {
        let m = mu.m();
        if atoms.codim() > (n + m) as u32 + 2 * marked_support(atoms).len() as u32 {
            return Polynomial::zero(HILB);
        }
        let key = (n, mu.clone(), l, atoms.clone());
        if let Some(hit) = self.memo.read().expect("lock").get(&key) {
            return hit.clone();
        }
        let lifted = self.psi(&Polynomial::term(HILB, atoms.clone(), Rational::one()), n, l);
        let out = self.integrate_step(n, mu, l, &lifted);
        self.memo.write().expect("lock").insert(key, out.clone());
        out
    }

    /// Pushes a class `s` on `S^[n,n−1] × S^l` (step variables of level `n`)
    /// to `S_μ × S^l` through the nested partial diagonal `E_{μ,μ'}`.
    fn integrate_step(&self, n: u16, mu: &SetPartition, l: u16, s: &Polynomial) -> Polynomial {
        let qs = split_ell(s);
        if n == 1 {
            // S^[1,0] = S with ell = 0; the residual point is block 1.
            let f = |i: u16| if i == l + 1 { 1 } else { i + 1 };
            let mut out = Polynomial::zero(HILB);
            if let Some(q0) = qs.first() {
                for (mono, c) in q0.terms() {
                    if mono.factors().iter().all(|(g, _)| is_bv_kind(g.kind)) {
                        out.add_term(mono.map_symbols(|g| bv::relabel_symbol(g, &f)), c.clone());
                    }
                }
            }
            return self.nf(out);
        }
        let mu_prev = mu.without_last();
        if mu_prev.m() < mu.m() {
            self.step_new_block(n, mu, &mu_prev, l, &qs)
        } else {
            self.step_same_block(n, &mu_prev, l, &qs)
        }
    }

    /// `{n}` is a block of its own. `E_{μ,μ'}` is birational to
    /// `S^[n,n−1] ×_{S^[n−1]} E_{μ'}`, so `σ_*` comes first.
    fn step_new_block(
        &self,
        n: u16,
        mu: &SetPartition,
        mu_prev: &SetPartition,
        l: u16,
        qs: &[Polynomial],
    ) -> Polynomial {
        let m = mu.m();
        let sigma = self.sigma(n, l, qs.len());
        let mut q = Polynomial::zero(HILB);
        for (a, qa) in qs.iter().enumerate() {
            if !qa.is_zero() {
                q = &q + &(qa * &sigma[a]);
            }
        }
        let q = self.nf(q);

        let m_prev = mu_prev.m();
        let shift = |i: u16| i + m_prev;
        let mut res = Polynomial::zero(HILB);
        for (mono, c) in q.terms() {
            let bound = (n - 1 + m_prev) as u32 + 2 * marked_support(mono).len() as u32;
            if mono.codim() > bound {
                continue;
            }
            let (bv_part, rest) = mono.split_by(|g| is_bv_kind(g.kind));
            let sub = self.pullback_atoms(n - 1, mu_prev, l + 1, &rest);
            if sub.is_zero() {
                continue;
            }
            let moved = bv_part.map_symbols(|g| bv::relabel_symbol(g, &shift));
            res.add_scaled(&sub.mul_monomial(&moved), c);
        }
        let res = self.nf(res);

        // the residual factor becomes block m
        let residual = m_prev + l + 1;
        let f = |i: u16| {
            if i == residual {
                m
            } else if i > m_prev {
                i + 1
            } else {
                i
            }
        };
        self.bv.relabel(&res, &f)
    }

    /// `n` joins the block of `n − 1`. Over the locus where the residual
    /// point meets that block, `E_{μ,μ'}` is the projectivized normal
    /// bundle `P(N)` of the universal family, and `ell` restricts to its
    /// `O(1)`, so the fibre integral of `ell^a` is `s_{a−1}(N)`. That locus
    /// is the nested diagonal one level down, with the residual points
    /// identified. The identification of the universal family with the
    /// nested Hilbert scheme one level down holds everywhere only for
    /// length at most 2, hence the restriction in [`HilbertEngine::pullback`].
    fn step_same_block(&self, n: u16, mu_prev: &SetPartition, l: u16, qs: &[Polynomial]) -> Polynomial {
        let cap = 2 * (n - 1 + l) as u32;
        let segre = self.normal_segre(n - 1, l, qs.len());
        let mut lowered = Polynomial::zero(HILB);
        for (a, qa) in qs.iter().enumerate().skip(1) {
            if qa.is_zero() || segre[a - 1].is_zero() {
                continue;
            }
            let t = self.restrict_to_residual(&self.psi(qa, n - 1, l + 1), l + 1);
            lowered = &lowered + &self.nf(&t * &segre[a - 1]).truncate(cap);
        }
        self.integrate_step(n - 1, mu_prev, l, &lowered)
    }

    /// Restricts a class in the step variables with marked point `j` and
    /// residual `j + 1` to the diagonal where the two coincide; the result
    /// has residual `j`.
    fn restrict_to_residual(&self, t: &Polynomial, j: u16) -> Polynomial {
        let diag = Self::g(bv::d(j, j + 1));
        let mut cache: HashMap<Monomial, Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(HILB);
        for (mono, c) in t.terms() {
            let (bv_part, rest) = mono.split_by(|g| is_bv_kind(g.kind));
            let rest = rest.map_symbols(|g| {
                if g.kind == KIND_CI && g.indices[1] == j + 1 {
                    ci(g.indices[0], j)
                } else {
                    *g
                }
            });
            let restricted = cache.entry(bv_part.clone()).or_insert_with(|| {
                let lifted = self.nf(diag.mul_monomial(&bv_part));
                self.bv.forget_index(&lifted, j).expect("normalized input")
            });
            out.add_scaled(&restricted.mul_monomial(&rest), c);
        }
        self.nf(out)
    }

    /// `(E_μ × Id_{S^l})^* p` for a class `p` on `S^[n] × S^l`, `n = |μ|`.
    /// The result is a normal-form BV polynomial on `S^(m+l)`.
    ///
    /// Blocks are processed largest first. Adding a point to an existing
    /// block is only implemented while the universal family it lands on has
    /// length at most 2, where its normal cone is a vector bundle; other
    /// partitions (from `n = 4` on, e.g. `{1,2,3,4}` and `{1,2}{3,4}`) give
    /// [`HilbertError::Unsupported`].
    pub fn pullback(&self, p: &Polynomial, mu: &SetPartition, l: u16) -> Result<Polynomial, HilbertError> {
        let n = mu.n();
        let m = mu.m();
        for mono in p.terms().keys() {
            self.check_monomial(mono, n, l)?;
        }
        // E_μ only depends on the block sizes in block order, so compute on
        // the contiguous partition with blocks sorted by decreasing size.
        let mut order: Vec<usize> = (0..m as usize).collect();
        order.sort_by_key(|&b| std::cmp::Reverse(mu.blocks()[b].len()));
        let sizes: Vec<u16> = order.iter().map(|&b| mu.blocks()[b].len() as u16).collect();
        let canon = SetPartition::from_sizes(&sizes);
        let mut end = 0;
        for &k in &sizes {
            end += k;
            if k >= 2 && end > 3 {
                return Err(HilbertError::Unsupported(format!(
                    "pullback along {mu} needs a point added to a block on a level above 3"
                )));
            }
        }
        let mut out = Polynomial::zero(HILB);
        for (mono, c) in p.terms() {
            let (l_part, rest) = mono.split_by(|g| g.kind == KIND_LH);
            let (bv_part, atoms) = rest.split_by(|g| is_bv_kind(g.kind));
            let mut acc = self.pullback_atoms(n, &canon, l, &atoms);
            if acc.is_zero() {
                continue;
            }
            for g in l_part.expanded() {
                acc = self.nf(&acc * &self.divisor_pullback(g.indices[0], &canon));
            }
            let moved = bv_part.map_symbols(|g| bv::relabel_symbol(g, &|i| i + m));
            out.add_scaled(&acc.mul_monomial(&moved), c);
        }
        let back = |i: u16| if i <= m { order[i as usize - 1] as u16 + 1 } else { i };
        Ok(self.nf(self.bv.relabel(&out, &back)).with_ring(BV))
    }

    /// `E_μ^* L(s) = Σ_b |μ_b|·L(s,b)`.
    fn divisor_pullback(&self, s: u16, mu: &SetPartition) -> Polynomial {
        let mut out = Polynomial::zero(HILB);
        for (b, block) in mu.blocks().iter().enumerate() {
            out.add_term(Monomial::gen(bv::l(s, b as u16 + 1)), int(block.len() as i64));
        }
        out
    }

    fn check_monomial(&self, mono: &Monomial, n: u16, l: u16) -> Result<(), HilbertError> {
        for (g, _) in mono.factors() {
            let ok = match g.kind {
                KIND_CT => g.indices[0] >= 1,
                KIND_CO => g.indices[0] >= 1,
                KIND_CI => g.indices[0] >= 1 && (1..=l).contains(&g.indices[1]),
                KIND_LH => (1..=self.bv.rho()).contains(&g.indices[0]),
                k if is_bv_kind(k) => bv::touched(g).iter().all(|i| (1..=l).contains(i)),
                _ => false,
            };
            if !ok {
                return Err(HilbertError::Invalid(format!(
                    "generator {} is not a class on S^[{n}] x S^{l}",
                    super::render_hilbert(g)
                )));
            }
        }
        Ok(())
    }

    /// `∫_{S^[n]} p` for `p` of codimension `2n`: the degree of the pullback
    /// along the finest partition divided by `n!`.
    pub fn integrate(&self, p: &Polynomial, n: u16) -> Result<Rational, HilbertError> {
        let pulled = self.pullback(p, &SetPartition::finest(n), 0)?;
        let fact = (1..=n as u64).fold(BigInt::one(), |a, b| a * b);
        Ok(self.bv.with_m(n).integrate(&pulled) / Rational::from_integer(fact))
    }

    /// As [`HilbertEngine::integrate`], rejecting classes that are not of
    /// pure codimension `2n`.
    pub fn chern_number(&self, p: &Polynomial, n: u16) -> Result<Rational, HilbertError> {
        if let Some(m) = p.terms().keys().find(|m| m.codim() != 2 * n as u32) {
            return Err(HilbertError::Invalid(format!(
                "a Chern number on S^[{n}] needs codimension {}, found a term of codimension {}",
                2 * n,
                m.codim()
            )));
        }
        self.integrate(p, n)
    }

    /// `∫_{S^[n]} c_{2n}(T)`, the topological Euler characteristic.
    pub fn euler_number(&self, n: u16) -> Result<Rational, HilbertError> {
        self.chern_number(&Polynomial::gen(HILB, ct(2 * n)), n)
    }
}

fn split_ell(p: &Polynomial) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for (mono, c) in p.terms() {
        let a = mono.exponent(&ell()) as usize;
        let rest = mono.split_by(|g| g.kind == KIND_ELL).1;
        if out.len() <= a {
            out.resize(a + 1, Polynomial::zero(HILB));
        }
        out[a].add_term(rest, c.clone());
    }
    out
}

/// Marked-point indices a monomial depends on.
fn marked_support(mono: &Monomial) -> BTreeSet<u16> {
    let mut out = BTreeSet::new();
    for (g, _) in mono.factors() {
        match g.kind {
            KIND_CI => {
                out.insert(g.indices[1]);
            }
            k if is_bv_kind(k) => out.extend(bv::touched(g).iter().copied()),
            _ => {}
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::HilbertRing;

    #[test]
    fn euler_numbers() {
        let e = HilbertEngine::default();
        assert_eq!(e.euler_number(1).unwrap(), int(24));
        assert_eq!(e.euler_number(2).unwrap(), int(324));
        assert_eq!(e.euler_number(3).unwrap(), int(3200));
    }

    #[test]
    fn low_level_integrals() {
        let e = HilbertEngine::default();
        let r = HilbertRing::new(2, 0, 1);
        let i = |s: &str| e.integrate(&r.parse(s).unwrap(), 2).unwrap();
        assert_eq!(i("c(T,2)^2"), int(828));
        assert_eq!(i("L(1)^4"), int(12));
        assert!(i("c(T,1)*c(T,3)").is_zero());
        assert!(e.chern_number(&r.parse("c(T,2)").unwrap(), 2).is_err());
    }

    #[test]
    fn small_diagonal_pullbacks() {
        let e = HilbertEngine::default();
        let r = HilbertRing::new(2, 0, 1);
        let whole = SetPartition::parse("{1,2}").unwrap();
        // E_{12} has one-dimensional fibres over S
        assert!(e.pullback(&r.parse("1").unwrap(), &whole, 0).unwrap().is_zero());
        let p = e
            .pullback(&r.parse("L(1)").unwrap(), &SetPartition::finest(2), 0)
            .unwrap();
        assert_eq!(e.bv().print(&p), "L(1,1) + L(1,2)");
        let p = e.pullback(&r.parse("L(1)").unwrap(), &whole, 0).unwrap();
        assert!(p.is_zero());
        let p = e.pullback(&r.parse("c(O,1)").unwrap(), &whole, 0).unwrap();
        assert_eq!(e.bv().print(&p), "1");
    }
}
