//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails. Runs without the libtest harness so the lines are always
//! printed.

use std::process::ExitCode;
use std::time::Instant;

use cellcut::random::{random_document, RandomParams};
use cellcut_core::bounds::{hermite_check, Status};
use cellcut_core::complex::CellComplex;
use cellcut_core::cutflow::{
    calibrated_cut_vector, calibrated_cut_vector_for, calibrated_flow_vector, cut_basis, flow_basis, flow_magnitudes,
    flow_vector, fundamental_bond, uncalibrated_cut_vector_raw, FacetVector, Role,
};
use cellcut_core::exact::{FiniteAbelianGroup, IntegerSolver};
use cellcut_core::fixtures::{self, all_subsets};
use cellcut_core::forest::{
    check_calculate_l, check_det_is_homology, check_dual_matrix_forest, check_relative_tor, down_up_minor, is_csf, mu,
    substitute, tau_by_determinant, ForestData,
};
use cellcut_core::lattice::{
    cocritical_group, critical_group, cut_lattice, cutflow_group, flow_lattice, group_summary, identity_checks,
    integral_cut_basis, integral_flow_basis, IntegralBasis,
};
use cellcut_core::BigInt;
use num_traits::{One, Signed, Zero};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ints(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

fn idx(c: &CellComplex, labels: &[&str]) -> Vec<usize> {
    c.facet_indices(labels).expect("labels exist")
}

fn by_label(c: &CellComplex, terms: &[(&str, i64)]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); c.num_facets()];
    for (l, x) in terms {
        v[c.facet_index(l).expect("label exists")] = BigInt::from(*x);
    }
    v
}

fn up_to_sign(a: &[BigInt], b: &[BigInt]) -> bool {
    a == b || a.iter().zip(b).all(|(x, y)| *x == -y)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

struct Member {
    name: String,
    complex: CellComplex,
    data: ForestData,
    /// Run det-is-homology on every pair (otherwise on an even sample).
    exhaustive_pairs: bool,
}

fn suite() -> Vec<Member> {
    let mut out: Vec<(String, CellComplex, bool)> =
        fixtures::named().into_iter().map(|(n, c)| (n.to_string(), c, true)).collect();
    let plan: [(usize, usize, f64, u64); 5] =
        [(5, 2, 0.5, 20), (6, 2, 0.25, 6), (6, 1, 0.5, 12), (7, 1, 0.35, 8), (5, 3, 0.6, 8)];
    for (vertices, dim, facet_prob, count) in plan {
        for seed in 1..=count {
            let doc = random_document(seed, RandomParams { vertices, dim, facet_prob }).expect("parameters in range");
            let c = doc.to_complex().expect("generated documents are valid");
            out.push((format!("random v={} d={} p={} seed={}", vertices, dim, facet_prob, seed), c, false));
        }
    }
    out.into_iter()
        .map(|(name, complex, exhaustive_pairs)| {
            let data = ForestData::new(&complex).expect("forest data");
            Member { name, complex, data, exhaustive_pairs }
        })
        .collect()
}

fn random_count(suite: &[Member]) -> usize {
    suite.iter().filter(|m| m.name.starts_with("random")).count()
}

fn bipyramid_golden() -> Check {
    let t = fixtures::bipyramid();
    let u = idx(&t, &["123", "124", "234", "135", "235"]);
    let cases: [(&str, &[(&str, i64)]); 5] = [
        ("123", &[("123", 1), ("125", 1), ("134", -1)]),
        ("124", &[("124", 1), ("134", 1)]),
        ("135", &[("125", 1), ("135", 1)]),
        ("234", &[("134", 1), ("234", 1)]),
        ("235", &[("235", 1), ("125", -1)]),
    ];
    let m = mu(&t, &u).map_err(err)?;
    ensure!(m == BigInt::from(75), "mu = {}, expected 75", m);
    for (s, pattern) in cases {
        let sigma = t.facet_index(s).expect("label");
        let unit = by_label(&t, pattern);
        let scaled: Vec<BigInt> = unit.iter().map(|x| x * 75).collect();
        let raw = uncalibrated_cut_vector_raw(&t, &u, sigma).map_err(err)?;
        ensure!(up_to_sign(&raw.coefficients, &scaled), "uncalibrated {}: {:?}", s, raw.coefficients);
        let cal = calibrated_cut_vector_for(&t, &u, sigma).map_err(err)?;
        ensure!(up_to_sign(&cal.coefficients, &unit), "calibrated {}: {:?}", s, cal.coefficients);
    }
    Ok("five uncalibrated vectors are 75 * (+-1 patterns), calibrated ones the bare patterns, mu = 75".into())
}

fn double_ravioli_golden() -> Check {
    let dr = fixtures::double_ravioli();
    let sigma = dr.facet_index("s2").expect("label");
    for (other, scale, chi_ab) in [("s5", 10i64, [10, 15, 0, 0]), ("s7", 14, [14, 21, 0, 0])] {
        let upsilon = idx(&dr, &["s2", other]);
        let a = idx(&dr, &[other]);
        let bond = fundamental_bond(&dr, &upsilon, sigma).map_err(err)?;
        ensure!(bond == idx(&dr, &["s2", "s3"]), "bond of s2 in {:?}: {:?}", upsilon, bond);
        let chi = calibrated_cut_vector(&dr, &a, &bond, sigma).map_err(err)?;
        let expected = ints(&chi_ab);
        ensure!(chi.clone().normalized().coefficients == expected, "chi_A(B) = {:?}", chi.coefficients);
        let raw = uncalibrated_cut_vector_raw(&dr, &upsilon, sigma).map_err(err)?;
        let expected_raw: Vec<BigInt> = expected.iter().map(|x| x * scale).collect();
        ensure!(raw.normalized().coefficients == expected_raw, "uncalibrated vector for {:?}", upsilon);
        let m = mu(&dr, &upsilon).map_err(err)?;
        ensure!(m == BigInt::from(scale), "mu = {} for {:?}", m, upsilon);
    }
    Ok("chi_A(B) = (10,15,0,0), chi(Y,s2) = (100,150,0,0), mu = 10; chi_A'(B) = (14,21,0,0), chi(Y',s2) = (196,294,0,0), mu = 14".into())
}

fn group_examples() -> Check {
    let rp2 = fixtures::projective_plane();
    ensure!(critical_group(&rp2).map_err(err)? == FiniteAbelianGroup::cyclic(4), "RP2 critical group");
    ensure!(cutflow_group(&rp2).map_err(err)? == FiniteAbelianGroup::cyclic(2), "RP2 cutflow group");
    ensure!(cocritical_group(&rp2).map_err(err)?.is_trivial(), "RP2 cocritical group");
    let k3 = fixtures::triangle_graph();
    ensure!(cutflow_group(&k3).map_err(err)? == FiniteAbelianGroup::cyclic(3), "K3 cutflow group");
    for a in 1..=6i64 {
        for b in 1..=6i64 {
            let v = fixtures::vic(a, b);
            let tau = a * a + b * b;
            let g = num_integer::gcd(a, b);
            let got =
                (critical_group(&v).map_err(err)?, cutflow_group(&v).map_err(err)?, cocritical_group(&v).map_err(err)?);
            let want = (
                FiniteAbelianGroup::cyclic(tau),
                FiniteAbelianGroup::cyclic(tau / g),
                FiniteAbelianGroup::cyclic(tau / (g * g)),
            );
            ensure!(got == want, "Vic({}, {}): got {:?}", a, b, got);
        }
    }
    Ok("RP2: K = Z_4, cutflow = Z_2, K* = 0; K3: cutflow = Z_3; Vic(a,b) for 1 <= a,b <= 6 all match".into())
}

fn flow_golden() -> Check {
    let c = fixtures::three_cell_circuit();
    let circuit: Vec<usize> = (0..3).collect();
    let phi = flow_vector(&c, &circuit).map_err(err)?;
    let hat = calibrated_flow_vector(&c, &circuit).map_err(err)?;
    let mags = flow_magnitudes(&c, &circuit).map_err(err)?;
    ensure!(mags == ints(&[2, 2, 4]), "|phi(C)| = {:?}", mags);
    let abs = |v: &FacetVector| -> Vec<BigInt> { v.coefficients.iter().map(Signed::abs).collect() };
    ensure!(abs(&phi) == ints(&[2, 2, 4]), "phi(C) = {:?}", phi.coefficients);
    ensure!(abs(&hat) == ints(&[1, 1, 2]), "phi^(C) = {:?}", hat.coefficients);
    // The signs are forced: the vector must be a cycle.
    let b = c.top_boundary();
    ensure!(b.mul_vec(&phi.coefficients).map_err(err)?.iter().all(Zero::is_zero), "phi(C) is not a cycle");
    ensure!(up_to_sign(&phi.coefficients, &ints(&[2, -2, 4])), "phi(C) = {:?}", phi.coefficients);
    let unsigned = b.mul_vec(&ints(&[2, 2, 4])).map_err(err)?;
    ensure!(unsigned.iter().any(|x| !x.is_zero()), "(2,2,4) unexpectedly a cycle");
    Ok(format!(
        "|phi(C)| = (2,2,4), |phi^| = (1,1,2); signed phi(C) = (2,-2,4) since the boundary of (2,2,4) is ({}) != 0",
        unsigned.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    ))
}

fn torsion_forest() -> Check {
    let k6 = fixtures::complete_2_complex(6);
    let labels = fixtures::rp2_six_vertex_labels();
    let upsilon = k6.facet_indices(&labels).map_err(err)?;
    ensure!(is_csf(&k6, &upsilon).map_err(err)?, "the projective plane is not a spanning forest");
    let t = cellcut_core::forest::forest_torsion(&k6, &upsilon).map_err(err)?;
    ensure!(t == BigInt::from(2), "t(Y) = {}", t);
    for &sigma in &upsilon {
        let v = calibrated_cut_vector_for(&k6, &upsilon, sigma).map_err(err)?;
        for (i, x) in v.coefficients.iter().enumerate() {
            let want: i64 = if i == sigma {
                2
            } else if upsilon.binary_search(&i).is_err() {
                1
            } else {
                0
            };
            ensure!(
                *x == BigInt::from(want) || *x == BigInt::from(-want),
                "sigma {}: entry {} is {}",
                k6.facets()[sigma],
                i,
                x
            );
        }
    }
    Ok("six-vertex RP2 is a spanning forest of the complete 2-complex on 6 vertices (t = 2); all 10 calibrated cut vectors are +-2 at sigma, +-1 off the forest".into())
}

#[derive(Default)]
struct Tally {
    complexes: usize,
    det_pairs: usize,
    det_exhaustive: usize,
    rel_tor: usize,
    cmft: usize,
    calc_l: usize,
    dual: usize,
}

fn identity_suite(suite: &[Member]) -> Check {
    let mut t = Tally::default();
    for m in suite {
        let (c, data) = (&m.complex, &m.data);
        let name = &m.name;
        let s = group_summary(c).map_err(err)?;
        ensure!(s.tau == data.tau(), "{}: group tau {} vs enumeration {}", name, s.tau, data.tau());
        for check in identity_checks(&s) {
            ensure!(check.pass, "{}: {} ({} vs {})", name, check.name, check.lhs, check.rhs);
        }
        let tau = data.tau();
        for g in &data.relatively_acyclic {
            let by_det = tau_by_determinant(c, &g.kept_rows).map_err(err)?;
            ensure!(by_det == tau, "{}: tau by determinant {} for rows {:?}", name, by_det, g.kept_rows);
            t.cmft += 1;
        }
        for f in &data.forests {
            for g in &data.relatively_acyclic {
                let (l, r) = check_relative_tor(c, &f.facets, &g.kept_rows).map_err(err)?;
                ensure!(l == r, "{}: relative torsion {} vs {}", name, l, r);
                t.rel_tor += 1;
            }
            let (l, r) = check_dual_matrix_forest(c, data, &f.facets).map_err(err)?;
            ensure!(l == r, "{}: dual matrix-forest {} vs {}", name, l, r);
            t.dual += 1;
            let n = c.num_facets();
            for &sigma in &f.facets {
                for rho in (0..n).filter(|x| f.facets.binary_search(x).is_err()) {
                    let mut other = substitute(&f.facets, sigma, rho).map_err(err)?;
                    other.sort_unstable();
                    let (l, r) = if data.forest_torsion(&other).is_some() {
                        check_calculate_l(c, data, &f.facets, sigma, rho).map_err(err)?
                    } else {
                        let minor = down_up_minor(c, &f.facets, &substitute(&f.facets, sigma, rho).map_err(err)?)
                            .map_err(err)?;
                        (minor, BigInt::zero())
                    };
                    ensure!(l == r, "{}: down-up minor {} vs {} for ({}, {})", name, l, r, sigma, rho);
                    t.calc_l += 1;
                }
            }
        }
        // det-is-homology over r-sets of facets and of ridges.
        let r = data.rank;
        let facet_sets = all_subsets(c.num_facets(), r);
        let row_sets = all_subsets(c.num_cells(c.dim() - 1), r);
        let total = facet_sets.len() * row_sets.len();
        let limit = if m.exhaustive_pairs { total } else { total.min(60) };
        for j in 0..limit {
            let k = j * total / limit;
            let u: Vec<usize> = facet_sets[k / row_sets.len()].iter().map(|x| x - 1).collect();
            let rows: Vec<usize> = row_sets[k % row_sets.len()].iter().map(|x| x - 1).collect();
            let four = check_det_is_homology(c, &u, &rows).map_err(err)?;
            ensure!(four.iter().all(|&x| x == four[0]), "{}: det-is-homology {:?} at {:?} {:?}", name, four, u, rows);
            t.det_pairs += 1;
        }
        if m.exhaustive_pairs {
            t.det_exhaustive += 1;
        }
        t.complexes += 1;
    }
    ensure!(random_count(suite) >= 50, "only {} random complexes", random_count(suite));
    ensure!(t.det_exhaustive >= 5, "det-is-homology exhaustive on only {} complexes", t.det_exhaustive);
    Ok(format!(
        "{} complexes ({} random): group identities; tau by determinant on {} Gamma; relative torsion on {} pairs; \
         down-up minors on {} substitutions; dual matrix-forest on {} forests; det-is-homology on {} pairs \
         (all pairs on {} complexes)",
        t.complexes,
        random_count(suite),
        t.cmft,
        t.rel_tor,
        t.calc_l,
        t.dual,
        t.det_pairs,
        t.det_exhaustive
    ))
}

fn integrality(suite: &[Member]) -> Check {
    let (mut cut_held, mut cut_failed, mut flow_held, mut flow_failed) = (0, 0, 0, 0);
    for m in suite {
        let (c, data) = (&m.complex, &m.data);
        let cut = cut_lattice(c).map_err(err)?;
        let flow = flow_lattice(c).map_err(err)?;
        let d = c.dim() as i32;
        let h_sigma = c.reduced_homology(d - 1).map_err(err)?;
        let b = c.top_boundary();
        for f in &data.forests {
            let u = &f.facets;
            match integral_cut_basis(c, u).map_err(err)? {
                IntegralBasis::Basis(vs) => {
                    ensure!(f.torsion.is_one(), "{}: cut basis emitted with t(Y) = {}", m.name, f.torsion);
                    let coeffs: Vec<Vec<BigInt>> = vs.iter().map(|v| v.coefficients.clone()).collect();
                    ensure!(
                        cut.is_generated_by(&coeffs).map_err(err)?,
                        "{}: cut basis of {:?} does not generate",
                        m.name,
                        u
                    );
                    cut_held += 1;
                }
                IntegralBasis::HypothesisFailure(_) => {
                    ensure!(!f.torsion.is_one(), "{}: cut hypothesis reported failing with t(Y) = 1", m.name);
                    cut_failed += 1;
                }
            }
            let hypothesis = c.top_restriction(u).map_err(err)?.reduced_homology(d - 1).map_err(err)? == h_sigma
                && IntegerSolver::new(&b.select_columns(u)).solve_matrix(b).map_err(err)?.is_some();
            match integral_flow_basis(c, u).map_err(err)? {
                IntegralBasis::Basis(vs) => {
                    ensure!(hypothesis, "{}: flow basis emitted without its hypothesis", m.name);
                    let coeffs: Vec<Vec<BigInt>> = vs.iter().map(|v| v.coefficients.clone()).collect();
                    ensure!(
                        flow.rank() == 0 || flow.is_generated_by(&coeffs).map_err(err)?,
                        "{}: flow basis of {:?} does not generate",
                        m.name,
                        u
                    );
                    flow_held += 1;
                }
                IntegralBasis::HypothesisFailure(_) => {
                    ensure!(!hypothesis, "{}: flow hypothesis reported failing but holds", m.name);
                    flow_failed += 1;
                }
            }
        }
    }
    ensure!(cut_held > 0 && flow_held > 0, "hypotheses never held");
    ensure!(cut_failed > 0 && flow_failed > 0, "hypothesis failures never exercised");
    Ok(format!(
        "cut: {} bases generate C, {} hypothesis failures reported; flow: {} bases generate F, {} hypothesis failures reported",
        cut_held, cut_failed, flow_held, flow_failed
    ))
}

fn orthogonality(suite: &[Member]) -> Check {
    let mut pairs = 0;
    for m in suite {
        let c = &m.complex;
        let n = c.num_facets();
        let cut = cut_lattice(c).map_err(err)?;
        let flow = flow_lattice(c).map_err(err)?;
        ensure!(cut.rank() + flow.rank() == n, "{}: ranks {} + {} != {}", m.name, cut.rank(), flow.rank(), n);
        ensure!(
            cut.basis().transpose().mul(flow.basis()).map_err(err)?.is_zero(),
            "{}: lattices not orthogonal",
            m.name
        );
        let u = &m.data.forests[0].facets;
        let cuts = cut_basis(c, u).map_err(err)?;
        let flows = flow_basis(c, u).map_err(err)?;
        ensure!(cuts.len() + flows.len() == n, "{}: basis sizes", m.name);
        for a in &cuts {
            ensure!(a.calibrated.role == Role::Cut, "role");
            for f in &flows {
                ensure!(a.uncalibrated.dot(&f.flow).is_zero(), "{}: cut . flow != 0", m.name);
                ensure!(a.calibrated.dot(&f.calibrated).is_zero(), "{}: calibrated cut . flow != 0", m.name);
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{} complexes: rank C + rank F = n, lattice bases orthogonal, {} forest cut/flow vector pairs orthogonal",
        suite.len(),
        pairs
    ))
}

fn hermite(suite: &[Member]) -> Check {
    let mut evaluated = 0;
    let mut skipped: std::collections::BTreeMap<String, usize> = Default::default();
    for m in suite {
        let h = hermite_check(&m.complex).map_err(err)?;
        for b in &h.checks {
            match &b.status {
                Status::Pass => evaluated += 1,
                Status::Fail => return Err(format!("{}: {} fails ({} vs {})", m.name, b.name, b.lhs, b.rhs)),
                Status::Skipped(why) => *skipped.entry(why.clone()).or_default() += 1,
            }
        }
    }
    ensure!(evaluated > 0, "no Hermite check was evaluated");
    let reasons: Vec<String> = skipped.iter().map(|(why, n)| format!("{} x {}", n, why)).collect();
    Ok(format!("{} inequalities hold exactly; skipped: {}", evaluated, reasons.join(", ")))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut all = true;
    let mut report = |n: usize, title: &str, result: Check| match result {
        Ok(detail) => println!("criterion {} {}: PASS - {}", n, title, detail),
        Err(why) => {
            all = false;
            println!("criterion {} {}: FAIL - {}", n, title, why)
        }
    };
    report(1, "bipyramid golden", bipyramid_golden());
    report(2, "double-ravioli golden", double_ravioli_golden());
    report(3, "group examples", group_examples());
    report(4, "flow vector golden", flow_golden());
    report(5, "torsion forest", torsion_forest());
    let suite = suite();
    report(6, "identity property suite", identity_suite(&suite));
    report(7, "basis integrality", integrality(&suite));
    report(8, "orthogonality and dimension", orthogonality(&suite));
    report(9, "Hermite inequalities", hermite(&suite));
    println!("acceptance suite finished in {:.1}s", start.elapsed().as_secs_f64());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
