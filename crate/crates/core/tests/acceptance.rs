//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
//! Every comparison is exact; tolerances are zero throughout.

use std::process::ExitCode;
use std::time::Instant;

use zipcone::catalog::{self, ConeName};
use zipcone::cone::{self, certificate_multiplier, saturated_certificate, ConeRepr, GeneratedCone, HalfspaceSystem, Weight};
use zipcone::fpoly::{a, delta, minor, FpPoly, MinorBasis, MinorFraction};
use zipcone::rootdata::{is_l_dominant, SymplecticRootDatum};
use zipcone::sections::{self, SectionName};
use zipcone::weyl;

type Outcome = Result<String, String>;

fn w(v: &[i64]) -> Weight {
    Weight::new(v.iter().copied())
}

fn dominant_box(n: usize, r: i64) -> Vec<Weight> {
    cone::box_points(&vec![(-r, r); n]).into_iter().map(Weight::new).filter(is_l_dominant).collect()
}

/// S_i = μ_i − p·w_0μ_i with μ_i = (1^i, 0^{n−i}).
fn s_weight(n: usize, i: usize, p: i64) -> Weight {
    Weight::new((0..n).map(|k| i64::from(k < i) - p * i64::from(k >= n - i)))
}

fn gauss(n: i64, k: i64, p: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let f = |m: i64| (1..=m).map(|j| p.pow(j as u32) - 1).product::<i64>();
    f(n) / (f(k) * f(n - k))
}

/// η_i = (a^i, b^{n−i}) with a = [n−1, i]_p and b = −p^{n−i}[n−1, i−1]_p.
fn eta(n: usize, i: usize, p: i64) -> Weight {
    let a_ = gauss(n as i64 - 1, i as i64, p);
    let b = -p.pow((n - i) as u32) * gauss(n as i64 - 1, i as i64 - 1, p);
    Weight::new((0..n).map(|k| if k < i { a_ } else { b }))
}

fn rzip_brute(l: &Weight, p: i64) -> usize {
    let l = l.to_i64().unwrap();
    let mut count = 0;
    for x in 0..=40 {
        for y in 0..=40 {
            for z in 0..=40 {
                let v = [y + (1 - p) * z, -p * (p - 1) * x - p * y + (1 - p) * z];
                if v == [l[0], l[1]] {
                    count += 1;
                }
            }
        }
    }
    count
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for p in [2u64, 3] {
        for l2 in -10..=10i64 {
            for l1 in l2..=10 {
                let lam = w(&[l1, l2]);
                let h0 = sections::h0_dimension(&lam, 2, p).map_err(|e| e.to_string())?;
                let ring = sections::rzip_sp4_graded_dimension(&lam, p);
                let brute = rzip_brute(&lam, p as i64);
                if h0 != ring || ring != brute {
                    return Err(format!("p={p} λ={lam}: h0 {h0}, ring count {ring}, brute count {brute}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} weights agree"))
}

fn criterion_2() -> Outcome {
    for p in [2i64, 3, 5] {
        let gens = GeneratedCone::new(2, vec![w(&[1, -p]), w(&[-1, -1])]).map_err(|e| e.to_string())?;
        // a1 − a2 ≥ 0 and −p a1 − a2 ≥ 0
        let hs = HalfspaceSystem::from_int_rows(2, &[vec![1i64, -1], vec![-p, -1]]).map_err(|e| e.to_string())?;
        if !cone::cones_equal_saturated(&ConeRepr::from(gens), &ConeRepr::from(hs)).map_err(|e| e.to_string())? {
            return Err(format!("p={p}: presentations differ"));
        }
    }
    Ok("p = 2, 3, 5".into())
}

fn criterion_3() -> Outcome {
    for p in [2i64, 3] {
        let g = vec![eta(3, 1, p), eta(3, 2, p), w(&[1 - p, 1 - p, 1 - p]), s_weight(3, 1, p)];
        let gens = GeneratedCone::new(3, g).map_err(|e| e.to_string())?;
        let rows = vec![vec![1, -1, 0], vec![0, 1, -1], vec![-p * p, -1, -p], vec![-p, -p * p, -1]];
        let hs = HalfspaceSystem::from_int_rows(3, &rows).map_err(|e| e.to_string())?;
        let derived = cone::halfspaces_of(&gens).map_err(|e| e.to_string())?;
        if derived != hs {
            return Err(format!("p={p}: elimination gives {:?}", derived.inequalities));
        }
        if !cone::cones_equal_saturated(&ConeRepr::from(gens), &ConeRepr::from(hs)).map_err(|e| e.to_string())? {
            return Err(format!("p={p}: presentations differ"));
        }
    }
    Ok("p = 2, 3".into())
}

fn criterion_4() -> Outcome {
    let mut verified = 0;
    for p in [2u64, 3] {
        let pi = p as i64;
        let mut expect: Vec<(SectionName, usize, Weight)> = Vec::new();
        for n in 1..=3 {
            for i in 1..=n {
                expect.push((SectionName::Delta(i), n, s_weight(n, i, pi)));
            }
            expect.push((SectionName::Hasse, n, Weight::new(vec![1 - pi; n])));
        }
        expect.push((SectionName::AlphaSp4, 2, w(&[0, -pi * (pi - 1)])));
        expect.push((SectionName::EpsilonSp6, 3, w(&[1, 0, -pi * pi])));
        expect.push((SectionName::F1Sp6, 3, eta(3, 1, pi)));
        expect.push((SectionName::F2Sp6, 3, eta(3, 2, pi)));
        for (name, n, lam) in expect {
            let s = sections::catalog_section(name, n, p).map_err(|e| format!("{name} n={n} p={p}: {e}"))?;
            if s.weight != lam {
                return Err(format!("{name} n={n} p={p}: weight {} instead of {lam}", s.weight));
            }
            verified += 1;
        }
        for name in [SectionName::ThetaSp6, SectionName::RhoSp6, SectionName::TauSp6] {
            sections::catalog_section(name, 3, p).map_err(|e| format!("{name} p={p}: {e}"))?;
            verified += 1;
        }
    }
    Ok(format!("{verified} sections verified"))
}

fn frac(num: FpPoly, den: &[u32]) -> MinorFraction {
    MinorFraction { num, den: den.to_vec() }
}

fn expected_gamma(n: usize, p: u64) -> Vec<Vec<MinorFraction>> {
    let pe = p as u32;
    let v = |i, j| FpPoly::var(p, a(i, j));
    let zero = |n: usize| frac(FpPoly::zero(p), &vec![0; n]);
    if n == 2 {
        let (d1, d2) = (delta(2, 1, p), delta(2, 2, p));
        let g11 = &(&v(1, 1) * &d1.pow(pe - 1)) + &v(2, 2).pow(pe);
        return vec![vec![frac(g11, &[pe - 1, 0]), frac(d1, &[0, 0])], vec![frac(-&d2, &[1, 0]), zero(2)]];
    }
    let (d1, d2, d3) = (delta(3, 1, p), delta(3, 2, p), delta(3, 3, p));
    let eps = &(&(&v(1, 1) * &v(1, 3).pow(pe)) + &(&v(1, 2) * &v(2, 3).pow(pe))) + &(&v(1, 3) * &v(3, 3).pow(pe));
    let d21 = minor(p, &[1, 3], &[2, 3]);
    let f1 = &(&v(1, 2) * &d2.pow(pe)) + &(&d1 * &d21.pow(pe));
    // δ_{3,2} as the signed cofactor (−1)^{3+2}·minor
    let d32 = -&minor(p, &[1, 2], &[1, 3]);
    let f2 = &(&d1.pow(pe) * &d32) - &(&d2 * &v(2, 3).pow(pe));
    vec![
        vec![frac(eps, &[pe, 0, 0]), frac(f1, &[0, pe, 0]), frac(d1.clone(), &[0, 0, 0])],
        vec![frac(f2, &[pe + 1, 0, 0]), frac(d2, &[1, 0, 0]), zero(3)],
        vec![frac(d3, &[0, 1, 0]), zero(3), zero(3)],
    ]
}

fn criterion_5() -> Outcome {
    let mut mismatches = Vec::new();
    for p in [2u64, 3] {
        for n in [2usize, 3] {
            let g = sections::gamma_matrix(n, p).map_err(|e| format!("n={n} p={p}: {e}"))?;
            let basis = MinorBasis::new(n, p);
            let expect = expected_gamma(n, p);
            for r in 1..=n {
                for s in 1..=n {
                    let shown = &expect[r - 1][s - 1];
                    if !basis.equal(g.entry(r, s), shown) {
                        let negated = basis.equal(g.entry(r, s), &basis.neg(shown));
                        let how = if negated { "equals minus the display" } else { "differs from the display" };
                        mismatches.push(format!("n={n} p={p}: γ_({r},{s}) {how}"));
                    }
                    if r + s <= n + 1 {
                        let wt = g.entry_weight(r, s).ok_or("inhomogeneous entry")?;
                        let target = Weight::unit(n, r).sub(&Weight::unit(n, s).scale(p));
                        if wt != target {
                            return Err(format!("n={n} p={p}: γ_({r},{s}) has weight {wt}"));
                        }
                        sections::clear_denominators(&g, r, s).map_err(|e| format!("n={n} p={p}: {e}"))?;
                    } else if !g.entry(r, s).num.is_zero() {
                        return Err(format!("n={n} p={p}: γ_({r},{s}) is nonzero"));
                    }
                }
            }
        }
    }
    if mismatches.is_empty() {
        Ok("n = 2, 3 and p = 2, 3; zero pattern, weights and cleared entries hold".into())
    } else {
        Err(format!("{}; zero pattern, weights and cleared entries hold", mismatches.join(", ")))
    }
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let mut positive = 0;
    for (n, p, r) in [(2usize, 2u64, 4i64), (2, 3, 4), (3, 2, 3)] {
        for lam in dominant_box(n, r) {
            let rep = weyl::thminter_check(&lam, p).map_err(|e| format!("n={n} p={p} λ={lam}: {e}"))?;
            if !rep.agree {
                return Err(format!("n={n} p={p} λ={lam}: lhs {} rhs {}", rep.lhs, rep.rhs));
            }
            checked += 1;
            positive += usize::from(rep.lhs > 0);
        }
    }
    Ok(format!("{checked} weights agree, {positive} with nonzero sections"))
}

fn criterion_7() -> Outcome {
    let p = 2u64;
    let datum = SymplecticRootDatum::split(2);
    let beta = datum.beta_index();
    let mut checked = 0;
    for lam in dominant_box(2, 3) {
        let v = weyl::build_module(&lam, p).map_err(|e| e.to_string())?;
        let f = v.highest_weight_vector().map_err(|e| e.to_string())?;
        let t = sections::tilde_section(&f, 2, p, true).map_err(|e| format!("λ={lam}: {e}"))?;
        let predicted = sections::valuation_sign_predict(&lam, beta, &datum, p).map_err(|e| e.to_string())?;
        let l = lam.to_i64().unwrap();
        let extends = 2 * l[0] + l[1] <= 0;
        if t.det_valuation.cmp(&0) != predicted || (t.det_valuation >= 0) != extends {
            return Err(format!("λ={lam}: valuation {} but predicted sign {predicted:?}", t.det_valuation));
        }
        checked += 1;
    }
    Ok(format!("{checked} weights"))
}

const ORACLE_CAP: usize = 20_000;

struct Chain {
    n: usize,
    p: u64,
    gs: HalfspaceSystem,
    hw: ConeRepr,
    pol: ConeRepr,
    sigma: ConeRepr,
    sections: GeneratedCone,
}

impl Chain {
    fn new(n: usize, p: u64) -> Result<Self, String> {
        let datum = SymplecticRootDatum::split(n);
        let sec = if n == 2 {
            let pi = p as i64;
            vec![w(&[1, -pi]), w(&[1 - pi, 1 - pi]), w(&[0, -pi * (pi - 1)])]
        } else {
            catalog::zip_sp6_generators(p)
        };
        Ok(Chain {
            n,
            p,
            gs: catalog::cone_gs(n).to_halfspaces().map_err(|e| e.to_string())?,
            hw: catalog::cone_hw(&datum, p).repr(),
            pol: ConeRepr::from(catalog::sigma_cap_xplus(&catalog::sigma1(n), n, p).map_err(|e| e.to_string())?),
            sigma: catalog::build(ConeName::Sigma1Prime, n, p).repr(),
            sections: GeneratedCone::new(n, sec).map_err(|e| e.to_string())?,
        })
    }

    /// Smallest m ≤ (certificate lcm) with mλ a sum of section weights, and
    /// whether such an m exists; m = 1 if λ is outside their cone.
    fn multiple(&self, lam: &Weight) -> Result<(u64, bool), String> {
        let Some(cert) = saturated_certificate(&self.sections, lam).map_err(|e| e.to_string())? else {
            return Ok((1, false));
        };
        let bound: u64 = certificate_multiplier(&cert).try_into().map_err(|_| "certificate bound overflow")?;
        Ok(match sections::monoid_multiple(&self.sections, lam, bound) {
            Some(m) => (m, true),
            None => (bound, false),
        })
    }

    /// Returns true when nonvanishing came from a product of sections rather than the oracle.
    fn check(&self, lam: &Weight) -> Result<bool, String> {
        let n = self.n;
        let ctx = |s: &str| format!("n={n} p={} λ={lam}: {s}", self.p);
        let gs = self.gs.contains(lam).map_err(|e| e.to_string())?;
        let hw = self.hw.contains(lam).map_err(|e| e.to_string())?;
        let (m, in_monoid) = self.multiple(lam)?;
        // a product of verified nonzero sections is a nonzero section of weight mλ
        let (zip, by_product) = if in_monoid {
            (true, true)
        } else {
            match sections::h0_dimension_capped(&lam.scale(m), n, self.p, ORACLE_CAP) {
                Ok(d) => (d > 0, false),
                Err(e) => return Err(ctx(&e.to_string())),
            }
        };
        let pol = self.pol.contains(lam).map_err(|e| e.to_string())?;
        let sig = self.sigma.contains(lam).map_err(|e| e.to_string())?;
        let chain = [("GS", gs), ("hw", hw), ("zip", zip), ("pol", pol), ("Σ'1", sig)];
        for k in 0..chain.len() - 1 {
            if chain[k].1 && !chain[k + 1].1 {
                return Err(ctx(&format!("in {} but not in {} (m = {m})", chain[k].0, chain[k + 1].0)));
            }
        }
        Ok(by_product)
    }
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    let mut by_product = 0;
    for (n, p, r) in [(2usize, 2u64, 10i64), (2, 3, 10), (3, 2, 3)] {
        let chain = Chain::new(n, p)?;
        for pt in cone::box_points(&vec![(-r, r); n]) {
            by_product += usize::from(chain.check(&Weight::new(pt))?);
            checked += 1;
        }
    }
    Ok(format!("{checked} box points, {by_product} nonvanishing by a product of sections, the rest by the oracle"))
}

fn criterion_9() -> Outcome {
    let p = 2u64;
    let d = zipcone::linalg::gl_order(2, p) as i64;
    let mut checked = 0;
    for lam in dominant_box(2, 2) {
        let big = weyl::build_module(&lam.scale(d), p).map_err(|e| e.to_string())?;
        let inv = big.invariants_finite_group().map_err(|e| e.to_string())?;
        if inv.is_empty() {
            return Err(format!("λ={lam}: V({d}λ) has no invariants"));
        }
        let f = weyl::build_module(&lam, p).and_then(|v| v.highest_weight_vector()).map_err(|e| e.to_string())?;
        let t = sections::tilde_section(&f, 2, p, true).map_err(|e| e.to_string())?;
        let body = t.body.expect("body requested");
        if body.is_zero() || t.body_det_power != big.det_power {
            return Err(format!("λ={lam}: tilde body is zero or has the wrong twist"));
        }
        let c = big.coordinates(&body).ok_or_else(|| format!("λ={lam}: tilde is not in V({d}λ)"))?;
        for (s, rho) in big.group_action().map_err(|e| e.to_string())? {
            let moved: Vec<u64> = (0..c.len()).map(|i| rho[i].iter().zip(&c).map(|(x, y)| x * y).sum::<u64>() % p).collect();
            if moved != c {
                return Err(format!("λ={lam}: tilde not fixed by {s:?}"));
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} weights, D = {d}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Sp(4) graded dimensions equal the three-generator ring count", criterion_1),
        ("Sp(4) saturated zip cone equals its halfspace description", criterion_2),
        ("Sp(6) saturated zip cone equals its halfspace description", criterion_3),
        ("catalog sections verify with their stated weights", criterion_4),
        ("Gamma matrix matches the displayed entries", criterion_5),
        ("sections equal invariants of the nonpositive part", criterion_6),
        ("tilde valuation sign matches the prediction", criterion_7),
        ("cone inclusion chain holds pointwise", criterion_8),
        ("mu-ordinary saturation for Sp(4), p = 2", criterion_9),
    ];
    let mut failed = 0;
    for (k, (desc, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("[PASS] criterion {}: {desc} ({detail}; tolerance exact; {secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {desc} ({why}; tolerance exact; {secs:.2}s)", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
