//! Acceptance checks, one line per criterion:
//! `cargo test --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use common::*;
use knotq::claspers::{
    contract, contract_graph, q_surgery, realize_claspers, ClasperSpec, StandardSurface,
};
use knotq::diagrams::{reduce_eyes, theta_normal_form, EyesDiagram, ThetaDiagram};
use knotq::exec::Execution;
use knotq::lattice::QuotientStructure;
use knotq::laurent::LaurentPoly;
use knotq::ltheta::{
    self, augment, canonical, membership, minimal_rank_generators, project, realization_value,
    AmbientPoly, ThetaElement,
};
use knotq::matrix::Matrix;
use knotq::seifert::{
    add_tube, alexander, congruence, intersection_matrix, is_unitriangular, triangular_dualize,
    SeifertMatrix,
};
use num_traits::One;
use rand::Rng;

const AC1_LIMIT: Duration = Duration::from_secs(30);
const AC5_LIMIT: Duration = Duration::from_secs(10);

type Criterion = (&'static str, &'static str, fn() -> Verdict);

struct Verdict {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Verdict {
    Verdict {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Verdict {
    Verdict {
        ok: false,
        detail: detail.into(),
    }
}

fn ac1() -> Verdict {
    let start = Instant::now();
    let mut rng = rng(1);
    for case in 0..500 {
        let g = rng.random_range(1..=3);
        let mut sm = random_geometric(&mut rng, g, 3);
        let delta = alexander(&sm);
        for step in 0..5 {
            sm = add_tube(&sm, &random_tube(&mut rng, sm.size(), 3)).unwrap();
            if alexander(&sm) != delta {
                return fail(format!("case {case}: tube {step} changed {delta}"));
            }
        }
        for step in 0..5 {
            let p = random_unimodular(&mut rng, sm.size(), 6);
            sm = congruence(&sm, &p).unwrap();
            if alexander(&sm) != delta {
                return fail(format!("case {case}: congruence {step} changed {delta}"));
            }
        }
    }
    let took = start.elapsed();
    if took > AC1_LIMIT {
        return fail(format!(
            "500 cases exact but took {took:.1?} (limit {AC1_LIMIT:?})"
        ));
    }
    pass(format!("500 cases x 10 moves, exact, {took:.1?}"))
}

fn ac2() -> Verdict {
    let poly = |s: &str| s.parse::<LaurentPoly>().unwrap();
    if !alexander(&SeifertMatrix::empty()).is_one() {
        return fail("empty matrix");
    }
    let hopf = SeifertMatrix::from_i64(&[&[0, 1], &[0, 0]]).unwrap();
    if !alexander(&hopf).is_one() {
        return fail("[[0,1],[0,0]]");
    }
    let trefoil = SeifertMatrix::from_i64(&[&[-1, 1], &[0, -1]]).unwrap();
    let want = poly("t^-1 - 1 + t");
    if alexander(&trefoil) != want || alexander_oracle(&trefoil) != want {
        return fail(format!("trefoil gave {}", alexander(&trefoil)));
    }
    let mut rng = rng(2);
    for case in 0..300 {
        let g = rng.random_range(1..=3);
        let sm = random_geometric(&mut rng, g, 4);
        let d = alexander(&sm);
        if d.bar() != d || !d.eval_at_one().is_one() {
            return fail(format!("geometric case {case}: {d}"));
        }
        if sm.genus() <= 2 && d != alexander_oracle(&sm) {
            return fail(format!("geometric case {case}: oracle disagrees"));
        }
    }
    pass("fixed values; bar symmetry and value 1 at t = 1 on 300 geometric matrices")
}

fn ac3() -> Verdict {
    let mut rng = rng(3);
    for _ in 0..1000 {
        let mu = [0; 3].map(|_| rng.random_range(-6i64..=6));
        let base = project(&AmbientPoly::monomial(mu, 1));
        for k in 0..12 {
            if project(&AmbientPoly::monomial(act(k, mu), 1)) != base {
                return fail(format!("{mu:?} under group element {k}"));
            }
        }
        let orbit = orbit_by_closure(mu);
        if canonical(mu) != *orbit.iter().next().unwrap() || !orbit.contains(&canonical(mu)) {
            return fail(format!("{mu:?}: canonical form is not the orbit minimum"));
        }
    }
    let p = |s: &str| project(&s.parse::<AmbientPoly>().unwrap());
    if p("t1^-1 - 1") != p("t1 - 1") {
        return fail("t1^-1 - 1 vs t1 - 1");
    }
    if !p("t1*t2 - t2").is_zero() {
        return fail("t1 t2 - t2");
    }
    pass("1000 monomials x 12 group elements, closure oracle agrees")
}

fn ac4() -> Verdict {
    let s = StandardSurface::new(1).unwrap();
    let mut sign = None;
    for n in -3..=3 {
        for m in -3..=3 {
            let spec = ClasperSpec::wheel(n, m);
            let got = contract(&spec, &s).unwrap();
            let want = realization_value(n, m);
            let this = if got == want {
                1
            } else if got == -&want {
                -1
            } else {
                return fail(format!("wheel({n},{m}) gave {got}"));
            };
            if *sign.get_or_insert(this) != this {
                return fail(format!("wheel({n},{m}) flips the global sign"));
            }
            let q = q_surgery(&[spec], &s).unwrap();
            if augment(&q) != 0 {
                return fail(format!(
                    "wheel({n},{m}): augmentation of Q is {}",
                    augment(&q)
                ));
            }
        }
    }
    pass(format!("49 wheels, global sign {:+}", sign.unwrap()))
}

fn ac5() -> Verdict {
    let s = StandardSurface::new(1).unwrap();
    let mut rng = rng(5);
    let targets: Vec<ThetaElement> = (0..100)
        .map(|_| random_kernel_element(&mut rng, 4, 5, 4))
        .collect();
    let start = Instant::now();
    let mut wheels = 0;
    for (i, target) in targets.iter().enumerate() {
        let specs = realize_claspers(target, &s).unwrap();
        wheels += specs.len();
        let q = q_surgery(&specs, &s).unwrap();
        if q != *target {
            return fail(format!("target {i}: {target} came back as {q}"));
        }
    }
    let took = start.elapsed();
    if took > AC5_LIMIT {
        return fail(format!("exact but took {took:.1?} (limit {AC5_LIMIT:?})"));
    }
    pass(format!("100 targets, {wheels} wheels, {took:.1?}"))
}

fn ac6() -> Verdict {
    let gens = minimal_rank_generators();
    let mut variants = 0;
    for len in 1..=3usize {
        for signs in 0..(1u32 << len) {
            let factors: Vec<AmbientPoly> = (0..len)
                .map(|i| {
                    AmbientPoly::var_pow_minus_one(i + 1, if signs >> i & 1 == 1 { -1 } else { 1 })
                })
                .collect();
            let x = project(&AmbientPoly::product(&factors));
            let witness = match membership(&x, &gens) {
                ltheta::Membership::Member(c) => c,
                ltheta::Membership::Outside => {
                    return fail(format!("variant {len}/{signs:b} outside"))
                }
            };
            if ltheta::combine(&witness, &gens).unwrap() != x {
                return fail(format!(
                    "variant {len}/{signs:b}: witness does not recombine"
                ));
            }
            variants += 1;
        }
    }
    let s = StandardSurface::new(1).unwrap();
    let mut outside = Vec::new();
    for n in -3..=3 {
        for m in -3..=3 {
            let q = q_surgery(&[ClasperSpec::wheel(n, m)], &s).unwrap();
            if !membership(&q, &gens).is_member() {
                outside.push((n, m));
            }
        }
    }
    if variants != 14 || outside.is_empty() {
        return fail(format!(
            "{variants} variants, {} wheels outside",
            outside.len()
        ));
    }
    pass(format!(
        "14 variants are members; {} of 49 wheels outside, first {:?}",
        outside.len(),
        outside[0]
    ))
}

fn ac7() -> Verdict {
    let ranks: Vec<usize> = (2..=5)
        .map(|w| {
            ltheta::window_quotient(w)
                .map(|q: QuotientStructure| q.free_rank)
                .unwrap()
        })
        .collect();
    if ranks.windows(2).all(|p| p[0] < p[1]) {
        pass(format!("free ranks for W = 2..5: {ranks:?}"))
    } else {
        fail(format!("free ranks for W = 2..5: {ranks:?}"))
    }
}

fn ac8() -> Verdict {
    let mut rng = rng(8);
    for case in 0..200 {
        let n = rng.random_range(1..=6);
        let d = random_unitriangular(&mut rng, n, 3);
        let b = triangular_dualize(&d).unwrap();
        if !b.mul(&d).unwrap().is_identity() {
            return fail(format!("case {case}: B D is not the identity"));
        }
    }
    for case in 0..200 {
        let g = rng.random_range(1..=4);
        let sm = random_trivial_alexander(&mut rng, g, 4);
        let d: Matrix<LaurentPoly> = intersection_matrix(&sm).unwrap();
        if !is_unitriangular(&d) {
            return fail(format!(
                "trivial Alexander case {case} is not unitriangular"
            ));
        }
    }
    pass("200 base changes exact; 200 intersection matrices unitriangular")
}

fn ac9() -> Verdict {
    let mut rng = rng(9);
    for case in 0..200 {
        let beads = [0; 3].map(|_| rng.random_range(-5i64..=5));
        let base = theta_normal_form(&ThetaDiagram { beads, coef: 1 });
        for k in 0..12 {
            let moved = theta_normal_form(&ThetaDiagram {
                beads: act(k, beads),
                coef: 1,
            });
            if moved != base {
                return fail(format!("theta case {case} under automorphism {k}"));
            }
        }
        let (a, b, c) = (beads[0], beads[1], beads[2]);
        if reduce_eyes(&EyesDiagram::new(a, b, c, 1)) != reduce_eyes(&EyesDiagram::new(b, a, c, 1))
        {
            return fail(format!("eyes({a},{b}|{c}) loop swap"));
        }
    }
    if !reduce_eyes(&EyesDiagram::new(0, 0, 0, 1)).is_zero() {
        return fail("eyes(1,1,1) is not 0");
    }
    let s = StandardSurface::new(1).unwrap();
    let mut nonzero = 0;
    for case in 0..50 {
        let spec = ClasperSpec::YPair {
            claspers: [random_y(&mut rng, 2), random_y(&mut rng, 2)],
        };
        let g = spec.to_graph();
        let direct = contract_graph(&g, &s, Execution::Sequential).unwrap();
        let (k1, k2) = (rng.random_range(-3..=3), rng.random_range(-3..=3));
        let rerouted = contract_graph(
            &g.push_vertex(0, k1).push_vertex(4, k2),
            &s,
            Execution::Parallel,
        )
        .unwrap();
        if direct != rerouted {
            return fail(format!("Y-pair case {case}: {direct} vs {rerouted}"));
        }
        nonzero += usize::from(!direct.is_zero());
    }
    pass(format!(
        "12 automorphisms x 200; loop swap; eyes(1,1,1) = 0; 50 Y-pairs ({nonzero} nonzero) agree"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "AC1",
            "Alexander polynomial invariant under S-equivalence",
            ac1,
        ),
        ("AC2", "Alexander polynomial fixed values and symmetry", ac2),
        ("AC3", "orbit normal form", ac3),
        ("AC4", "wheel contraction values", ac4),
        ("AC5", "realization round trip", ac5),
        (
            "AC6",
            "minimal-rank subgroup membership and a certificate",
            ac6,
        ),
        ("AC7", "window quotient ranks strictly increase", ac7),
        ("AC8", "triangular base change", ac8),
        ("AC9", "diagram relations and two-path contraction", ac9),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let v = std::panic::catch_unwind(check).unwrap_or_else(|_| fail("panicked"));
        let tag = if v.ok { "PASS" } else { "FAIL" };
        failed += usize::from(!v.ok);
        println!(
            "[{tag}] {id} {name}: {} [{:.2?}]",
            v.detail,
            start.elapsed()
        );
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
}
