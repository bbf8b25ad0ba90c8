use proptest::prelude::*;
use std::sync::Arc;
use tautochow::algebra::{int, rat, GenSymbol, Polynomial};
use tautochow::bv::{self, BvRing, BV};
use tautochow::expr::{Cache, CacheError, CacheKey, ExprError};
use tautochow::fano::FanoRing;
use tautochow::hilbert::HilbertRing;
use tautochow::k3::K3Model;

fn bv_gen(m: u16) -> impl Strategy<Value = GenSymbol> {
    prop_oneof![
        (1..=m).prop_map(bv::o),
        (1u16..=2, 1..=m).prop_map(|(s, i)| bv::l(s, i)),
        (1..=m, 1..=m)
            .prop_filter("distinct", |(i, j)| i != j)
            .prop_map(|(i, j)| bv::d(i, j)),
    ]
}

fn bv_poly() -> impl Strategy<Value = Polynomial> {
    let term = (prop::collection::vec(bv_gen(4), 0..4), -20i64..=20, 1i64..=7);
    prop::collection::vec(term, 0..6).prop_map(|terms| {
        let mut p = Polynomial::zero(BV);
        for (gens, n, d) in terms {
            let mono = gens
                .into_iter()
                .fold(Polynomial::one(BV), |acc, g| &acc * &Polynomial::gen(BV, g));
            p.add_scaled(&mono, &rat(n, d));
        }
        p
    })
}

fn fano_text() -> impl Strategy<Value = String> {
    let atom = prop::sample::select(vec![
        "l", "cc", "Ex", "o", "D(1)", "D(2)", "q(l)", "qi(l)", "q(1,2)", "q(2)", "C",
    ]);
    let mono = prop::collection::vec(atom, 1..4).prop_map(|a| a.join("*"));
    prop::collection::vec((mono, -9i64..=9, 1i64..=5), 1..5).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(m, n, d)| format!("({n}/{d})*{m}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

/// Byte ranges of the identifiers in `text`.
fn identifiers(text: &str) -> Vec<(usize, usize)> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_alphabetic() {
            let start = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((start, i));
        } else {
            i += 1;
        }
    }
    out
}

/// A generator name turned unknown, or an identifier argument (`T` in
/// `c(T,2)`, `l` in `q(l)`) that the generator does not accept.
fn unknown(e: &ExprError) -> bool {
    matches!(e, ExprError::UnknownGenerator { .. } | ExprError::Argument { .. })
}

fn ring4() -> BvRing {
    BvRing::k3_with_ns(4, &K3Model::diagonal(2, 1))
}

proptest! {
    #[test]
    fn bv_round_trip(p in bv_poly()) {
        let ring = ring4();
        let text = ring.print(&p);
        prop_assert_eq!(ring.parse(&text).unwrap(), p);
    }

    #[test]
    fn fano_round_trip(text in fano_text()) {
        let r = FanoRing;
        let p = r.parse(&text).unwrap();
        let printed = r.print(&p);
        prop_assert_eq!(r.parse(&printed).unwrap(), p.clone());
        // printing is a fixed point
        prop_assert_eq!(r.print(&r.parse(&printed).unwrap()), printed);
    }

    #[test]
    fn mutated_identifier_is_rejected(p in bv_poly(), pick in any::<prop::sample::Index>(), junk in "[a-z]{2,5}") {
        let ring = ring4();
        let text = ring.print(&p);
        let ids = identifiers(&text);
        prop_assume!(!ids.is_empty());
        let (s, e) = ids[pick.index(ids.len())];
        let mutated = format!("{}zz{junk}{}", &text[..s], &text[e..]);
        let err = ring.parse(&mutated).unwrap_err();
        prop_assert!(unknown(&err), "{mutated}: {err}");
    }
}

#[test]
fn mutation_in_every_ring() {
    let hilb = HilbertRing::new(2, 1, 1);
    let fano = FanoRing;
    let text = "c(T,2)*L(1) - 2*c(I,3,1) + o(1)*c(O,1)";
    for (s, e) in identifiers(text) {
        let mutated = format!("{}nope{}", &text[..s], &text[e..]);
        assert!(unknown(&hilb.parse(&mutated).unwrap_err()), "{mutated}");
    }
    let text = "l^2*cc + 3*qi(l)*q(1)*D(1)*Ex - C*o";
    for (s, e) in identifiers(text) {
        let mutated = format!("{}nope{}", &text[..s], &text[e..]);
        assert!(unknown(&fano.parse(&mutated).unwrap_err()), "{mutated}");
    }
}

#[test]
fn hilbert_round_trip() {
    let r = HilbertRing::new(3, 2, 2);
    for s in [
        "c(T,2)^2*c(O,1) - 1/2*L(2)*L(1)",
        "c(I,3,1)*D(1,2) + 7*o(2)*c(O,3)",
        "L(1,1)*L(2,2) - c(T,6)",
    ] {
        let p = r.parse(s).unwrap();
        assert_eq!(r.parse(&r.print(&p)).unwrap(), p, "{s}");
    }
}

#[test]
fn cache_is_write_once() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::open(dir.path()).unwrap();
    let key = CacheKey::new("normalize", "bv", "D(1,2)^2", "0.1.0:-");
    cache.put(&key, "24*o(1)*o(2)").unwrap();
    cache.put(&key, "24*o(1)*o(2)").unwrap();
    let err = cache.put(&key, "0").unwrap_err();
    assert!(matches!(err, CacheError::Integrity { .. }));
    assert!(err.to_string().contains("cache integrity violation"), "{err}");
    assert_eq!(cache.get(&key).as_deref(), Some("24*o(1)*o(2)"));
}

#[test]
fn concurrent_readers_see_all_or_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Arc::new(Cache::open(dir.path()).unwrap());
    let value: String = (0..2000).map(|i| format!("{i}*o(1) + ")).collect::<String>() + "1";
    let keys: Vec<CacheKey> = (0..16)
        .map(|i| CacheKey::new("normalize", "bv", &format!("o({i})"), "fp"))
        .collect();
    std::thread::scope(|s| {
        for _ in 0..4 {
            let (cache, keys, value) = (Arc::clone(&cache), &keys, &value);
            s.spawn(move || {
                for k in keys {
                    cache.put(k, value).unwrap();
                }
            });
        }
        for _ in 0..4 {
            let (cache, keys, value) = (Arc::clone(&cache), &keys, &value);
            s.spawn(move || {
                for _ in 0..50 {
                    for k in keys {
                        if let Some(v) = cache.get(k) {
                            assert_eq!(&v, value);
                        }
                    }
                }
            });
        }
    });
    for k in &keys {
        assert_eq!(cache.get(k).as_deref(), Some(value.as_str()));
    }
}

#[test]
fn printing_uses_lowest_terms() {
    let ring = BvRing::k3(2);
    let p = Polynomial::gen(BV, bv::o(1)).scale(&rat(6, -4));
    assert_eq!(ring.print(&p), "-3/2*o(1)");
    assert_eq!(ring.print(&Polynomial::constant(BV, int(0))), "0");
}
