//! Named verification suites: fixed exhaustive parts plus seeded random
//! instances.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{
    classification_check, eigencat_check, eq3_shape_spotcheck, nul1_integral_check,
    nul1_theorem_check, nul2_case_polynomials, parter_check, q_subdivision_check, rhocat_check,
    s_nonintegral_scan, timed, VerdictRecord, VerifierError,
};
use crate::reduction::{
    delp2_growth_check, delp2_monotonicity_check, pendant_mids, reduced_census,
};
use crate::spectra::{
    char_poly, courant_weyl_check, join_formula, nullity_matching, nullity_poly,
    squared_shift_check,
};
use crate::tree::{
    double_star, enumerate_free_trees, join_copies, path, random_tree, s_tree, star, AttachSpec,
};

pub const SUITES: [&str; 11] = [
    "all",
    "eigencat",
    "rhocat",
    "inttr",
    "parter",
    "join",
    "delp2",
    "cskvarithm",
    "nul1",
    "nul2",
    "eq3",
];

type Records = Result<Vec<VerdictRecord>, VerifierError>;

/// Runs one suite (or every suite for `"all"`). Random instances are drawn
/// from a generator seeded by `seed` and the suite name, so each suite's
/// output depends only on its own arguments.
pub fn run_suite(name: &str, seed: u64, trials: usize) -> Records {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ name_salt(name));
    match name {
        "all" => {
            let mut out = Vec::new();
            for s in SUITES.iter().skip(1) {
                out.extend(run_suite(s, seed, trials)?);
            }
            Ok(out)
        }
        "eigencat" => eigencat(&mut rng, trials),
        "rhocat" => rhocat(),
        "inttr" => inttr(),
        "parter" => parter(&mut rng, trials),
        "join" => join(&mut rng, trials),
        "delp2" => delp2(),
        "cskvarithm" => cskvarithm(&mut rng, trials),
        "nul1" => nul1(),
        "nul2" => nul2(&mut rng, trials),
        "eq3" => eq3(&mut rng, trials),
        other => Err(VerifierError::UnknownSuite(other.to_string())),
    }
}

fn name_salt(name: &str) -> u64 {
    // FNV-1a
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

fn eigencat(rng: &mut ChaCha8Rng, trials: usize) -> Records {
    let mut out = Vec::new();
    for n in 2..=3u32 {
        for idx in 0..7usize.pow(n) {
            let r: Vec<usize> = (0..n).map(|i| idx / 7usize.pow(i) % 7).collect();
            out.push(eigencat_check(&r)?);
        }
    }
    for _ in 0..trials {
        let n = rng.gen_range(2..=5);
        let r: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=8)).collect();
        out.push(eigencat_check(&r)?);
    }
    Ok(out)
}

fn rhocat() -> Records {
    let mut out = vec![q_subdivision_check(6)?];
    for n in 1..=8 {
        for j in 1..=n {
            out.push(rhocat_check(n, j)?);
        }
    }
    Ok(out)
}

fn inttr() -> Records {
    Ok(vec![s_nonintegral_scan(2, 12)?, s_nonintegral_scan(3, 6)?])
}

fn parter(rng: &mut ChaCha8Rng, trials: usize) -> Records {
    let mut out = Vec::new();
    for n in 1..=12 {
        for t in enumerate_free_trees(n, None)? {
            out.push(parter_check(&t)?);
        }
    }
    for _ in 0..trials {
        let n = rng.gen_range(2..=16);
        out.push(parter_check(&random_tree(n, rng))?);
    }
    Ok(out)
}

fn join(rng: &mut ChaCha8Rng, trials: usize) -> Records {
    let mut out = Vec::new();
    for _ in 0..trials {
        let n1 = rng.gen_range(1..=12);
        let n2 = rng.gen_range(1..=6);
        let k = rng.gen_range(1..=((24 - n1) / n2).clamp(1, 4));
        let t1 = random_tree(n1, rng);
        let t2 = random_tree(n2, rng);
        let v1 = rng.gen_range(0..n1);
        let v2 = rng.gen_range(0..n2);
        out.push(timed(
            "join_formula",
            json!({ "t1": t1.to_text(), "v1": v1, "t2": t2.to_text(), "v2": v2, "k": k }),
            || {
                let formula = join_formula(&t1, v1, &t2, v2, k)?;
                let direct = char_poly(&join_copies(&t1, v1, &t2, v2, k)?);
                Ok((
                    formula == direct,
                    json!({ "formula": formula, "direct": direct }),
                ))
            },
        )?);
    }
    for _ in 0..trials {
        let n = rng.gen_range(1..=8);
        let t = random_tree(n, rng);
        let k = rng.gen_range(1..=n.min(3));
        let mut vertices: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = rng.gen_range(i..n);
            vertices.swap(i, j);
        }
        let entries: Vec<(usize, usize)> = vertices[..k]
            .iter()
            .map(|&v| (v, rng.gen_range(1..=5)))
            .collect();
        let spec = AttachSpec::new(entries)?;
        out.push(timed(
            "courant_weyl",
            json!({ "tree": t.to_text(), "spec": spec.entries() }),
            || {
                let verdicts = courant_weyl_check(&t, &spec)?;
                Ok((
                    verdicts.iter().all(|v| v.holds),
                    json!({ "per_index": verdicts }),
                ))
            },
        )?);
    }
    Ok(out)
}

fn delp2() -> Records {
    let mut out = Vec::new();
    for n in 1..=10 {
        let mut strips = 0usize;
        let mut growths = 0usize;
        let rec = timed("delp2_exhaustive", json!({ "order": n }), || {
            let mut bad = Vec::new();
            for t in enumerate_free_trees(n, None)? {
                if let Ok(v) = delp2_monotonicity_check(&t) {
                    strips += v.strips.len();
                    if !v.holds {
                        bad.push(
                            json!({ "code": t.canonical_code(), "check": "strip", "detail": v }),
                        );
                    }
                }
                for v in (0..n).filter(|&v| !pendant_mids(&t, v).is_empty()) {
                    growths += 1;
                    let g = delp2_growth_check(&t, v)?;
                    if !g.holds {
                        bad.push(json!({ "code": t.canonical_code(), "vertex": v, "detail": g }));
                    }
                }
            }
            Ok((
                bad.is_empty(),
                json!({ "strips": strips, "additions": growths, "failures": bad }),
            ))
        })?;
        out.push(rec);
    }
    out.push(timed("reduced_census", json!({ "order_cap": 10 }), || {
        let zero = reduced_census(0, 10);
        let one = reduced_census(1, 10);
        let ok = zero.len() == 1
            && zero[0].is_isomorphic(&path(2))
            && one.len() == 1
            && one[0].is_isomorphic(&path(1));
        let codes = |ts: &[crate::tree::Tree]| -> Vec<String> {
            ts.iter().map(|t| t.canonical_code().to_string()).collect()
        };
        Ok((ok, json!({ "m0": codes(&zero), "m1": codes(&one) })))
    })?);
    Ok(out)
}

fn cskvarithm(rng: &mut ChaCha8Rng, trials: usize) -> Records {
    let mut out = Vec::new();
    out.push(timed("spider_char_poly", json!({ "p_max": 20 }), || {
        let mut bad = Vec::new();
        for p in 0..=20usize {
            let want = &(&crate::poly::IntPoly::x()
                * &crate::poly::IntPoly::even_quadratic(&BigInt::from(p + 3)))
                * &crate::poly::IntPoly::even_quadratic(&BigInt::from(1)).pow(p as u32 + 1);
            if char_poly(&s_tree(&[p])?) != want {
                bad.push(p);
            }
        }
        Ok((bad.is_empty(), json!({ "mismatches": bad })))
    })?);
    out.push(timed(
        "nullity_cross_oracle",
        json!({ "order_max": 12 }),
        || {
            let mut checked = 0usize;
            let mut bad = Vec::new();
            for n in 1..=12 {
                for t in enumerate_free_trees(n, None)? {
                    checked += 1;
                    if nullity_poly(&t) != nullity_matching(&t) {
                        bad.push(t.canonical_code().to_string());
                    }
                }
            }
            Ok((
                bad.is_empty(),
                json!({ "trees": checked, "mismatches": bad }),
            ))
        },
    )?);
    for _ in 0..trials {
        let n = rng.gen_range(2..=12);
        let t = random_tree(n, rng);
        let side = t.bipartition()[rng.gen_range(0..2)].clone();
        let r = rng.gen_range(1..=6);
        out.push(timed(
            "squared_shift",
            json!({ "tree": t.to_text(), "class": side, "r": r }),
            || {
                let v = squared_shift_check(&t, &side, r)?;
                Ok((v.holds, serde_json::to_value(&v).expect("serializable")))
            },
        )?);
    }
    Ok(out)
}

fn nul1() -> Records {
    Ok(vec![
        nul1_theorem_check(13)?,
        nul1_integral_check(17, &[1, 6])?,
    ])
}

fn nul2(rng: &mut ChaCha8Rng, trials: usize) -> Records {
    let mut out = vec![
        classification_check(0, 14, &[path(2)])?,
        classification_check(2, 14, &[double_star(2, 2)])?,
        classification_check(3, 14, &[star(4)])?,
    ];
    for (p, q, r) in [(0, 0, 0), (1, 1, 2), (4, 3, 1), (2, 0, 1)] {
        out.push(nul2_case_polynomials(p, q, r)?);
    }
    for _ in 0..trials {
        let (p, q, r) = (
            rng.gen_range(0..=6),
            rng.gen_range(0..=6),
            rng.gen_range(0..=6),
        );
        out.push(nul2_case_polynomials(p, q, r)?);
    }
    Ok(out)
}

fn eq3(rng: &mut ChaCha8Rng, trials: usize) -> Records {
    let mut out = vec![
        eq3_shape_spotcheck(&[1], &[(1, 3)])?,
        eq3_shape_spotcheck(&[0, 0], &[(1, 2), (2, 2)])?,
        eq3_shape_spotcheck(&[1, 3, 0, 2], &[(1, 1), (2, 1), (3, 1), (4, 1)])?,
    ];
    for _ in 0..trials {
        let n = rng.gen_range(1..=3);
        let r: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
        let spec: Vec<(usize, usize)> = (1..=n).map(|c| (c, rng.gen_range(1..=4))).collect();
        out.push(eq3_shape_spotcheck(&r, &spec)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert_eq!(
            run_suite("nope", 0, 1).unwrap_err(),
            VerifierError::UnknownSuite("nope".into())
        );
    }

    #[test]
    fn seeded_suites_are_deterministic() {
        let strip = |rs: Vec<VerdictRecord>| -> Vec<String> {
            rs.into_iter()
                .map(|r| format!("{} {} {:?}", r.check, r.instance, r.verdict))
                .collect()
        };
        let a = strip(run_suite("join", 7, 5).unwrap());
        let b = strip(run_suite("join", 7, 5).unwrap());
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        assert_ne!(a, strip(run_suite("join", 8, 5).unwrap()));
    }

    #[test]
    fn fast_suites_pass() {
        for name in ["eigencat", "rhocat", "join", "cskvarithm", "eq3", "delp2"] {
            let recs = run_suite(name, 1, 5).unwrap();
            assert!(!recs.is_empty());
            for r in &recs {
                assert!(r.passed(), "{name}: {} {}", r.instance, r.certificate);
            }
        }
    }
}
