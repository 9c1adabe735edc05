//! Verification sweeps over all small cases.
//!
//! Each sweep enumerates its cases up front and evaluates them with
//! [`crate::par`], so the work spreads across threads when the `parallel`
//! feature is on. The per-case functions are public so callers can run the
//! same cases sequentially.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arithmetic::{self, add, left, right, Word};
use crate::dendriform::{poly_of_int, rational, Polynomial};
use crate::geometry::{self, Canopy, CoordMap};
use crate::par;
use crate::tamari::{self, over, under};
use crate::tree::{Tree, TreeSet};

/// Seed for every randomized sweep; reports are reproducible.
pub const SEED: u64 = 0x7a3a_21de_11f0_5eed;

/// Outcome of one sweep.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(name: &str) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            cases: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, results: Vec<Option<String>>) {
        self.cases += results.len();
        self.failures.extend(results.into_iter().flatten());
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {} ({} cases)", self.name, self.cases)?;
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        for e in &self.failures {
            writeln!(f, "  failed: {e}")?;
        }
        Ok(())
    }
}

fn trees_up_to(max_degree: usize) -> Vec<Tree> {
    (0..=max_degree).flat_map(Tree::all_of_degree).collect()
}

/// Triples of trees (degree 0 allowed) with total degree at most `max_total`.
pub fn triples_up_to(max_total: usize) -> Vec<[Tree; 3]> {
    let trees = trees_up_to(max_total);
    let mut out = Vec::new();
    for r in &trees {
        for s in &trees {
            for t in &trees {
                if r.degree() + s.degree() + t.degree() <= max_total {
                    out.push([r.clone(), s.clone(), t.clone()]);
                }
            }
        }
    }
    out
}

/// The three splitting relations and associativity of the sum for one
/// triple, as set identities.
pub fn relation_case(r: &Tree, s: &Tree, t: &Tree) -> Option<String> {
    let rs = TreeSet::singleton(r.clone());
    let ts = TreeSet::singleton(t.clone());
    let checks = [
        (
            "(r -| s) -| t = r -| (s + t)",
            arithmetic::op_left(&left(r, s), &ts),
            arithmetic::op_left(&rs, &add(s, t)),
        ),
        (
            "(r |- s) -| t = r |- (s -| t)",
            arithmetic::op_left(&right(r, s), &ts),
            arithmetic::op_right(&rs, &left(s, t)),
        ),
        (
            "(r + s) |- t = r |- (s |- t)",
            arithmetic::op_right(&add(r, s), &ts),
            arithmetic::op_right(&rs, &right(s, t)),
        ),
        (
            "(r + s) + t = r + (s + t)",
            arithmetic::sum(&add(r, s), &ts),
            arithmetic::sum(&rs, &add(s, t)),
        ),
    ];
    checks
        .into_iter()
        .find(|(_, a, b)| a != b)
        .map(|(name, _, _)| format!("{name} fails for r={r} s={s} t={t}"))
}

/// Halves of `s + t` are disjoint and the sum has the right degree.
pub fn split_case(s: &Tree, t: &Tree) -> Option<String> {
    let (l, r) = (left(s, t), right(s, t));
    let sum = add(s, t);
    let degree = s.degree() + t.degree();
    if !l.is_disjoint(&r) || sum.len() != l.len() + r.len() {
        return Some(format!("halves of {s} + {t} overlap"));
    }
    if sum.iter().any(|x| x.degree() != degree) {
        return Some(format!("{s} + {t} has a member of the wrong degree"));
    }
    None
}

/// Splitting relations on every triple of total degree `<= max_total`, plus
/// `random` seeded triples of trees of degree `random_degree`.
pub fn relations(max_total: usize, random_degree: usize, random: usize) -> CheckReport {
    let mut report = CheckReport::new("relations");
    let triples = triples_up_to(max_total);
    report.absorb(par::map(&triples, |[r, s, t]| relation_case(r, s, t)));

    let pool = Tree::all_of_degree(random_degree);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sampled: Vec<[Tree; 3]> = (0..random)
        .map(|_| [0, 1, 2].map(|_| pool.choose(&mut rng).expect("nonempty").clone()))
        .collect();
    report.absorb(par::map(&sampled, |[r, s, t]| relation_case(r, s, t)));

    let pairs: Vec<(Tree, Tree)> = triples
        .iter()
        .filter(|[_, _, t]| t.is_leaf())
        .map(|[r, s, _]| (r.clone(), s.clone()))
        .collect();
    report.absorb(par::map(&pairs, |(s, t)| split_case(s, t)));

    for m in 0..=max_total {
        for n in 0..=(max_total - m) {
            report.expect(
                arithmetic::sum(&arithmetic::embed(m), &arithmetic::embed(n))
                    == arithmetic::embed(m + n),
                || format!("embed({m}) + embed({n}) != embed({})", m + n),
            );
        }
    }
    report.notes.push(format!(
        "{} exhaustive triples up to total degree {max_total}, {random} random triples at degree {random_degree}",
        triples.len()
    ));
    report
}

/// `t + s` equals the interval `[t/s, t\s]`, and `t/s <= t\s`.
pub fn theorem_case(t: &Tree, s: &Tree) -> Option<String> {
    let (lo, hi) = (under(t, s), over(t, s));
    let cap = lo.degree().max(tamari::DEFAULT_CAP);
    match (
        tamari::leq_capped(&lo, &hi, cap),
        tamari::interval_capped(&lo, &hi, cap),
    ) {
        (Ok(false), _) => Some(format!("{t}/{s} = {lo} is not below {t}\\{s} = {hi}")),
        (Err(e), _) | (_, Err(e)) => Some(format!("{t}, {s}: {e}")),
        (Ok(true), Ok(iv)) if iv != add(t, s) => {
            Some(format!("{t} + {s} differs from the interval [{lo}, {hi}]"))
        }
        _ => None,
    }
}

/// The interval theorem for every pair of total degree `<= max_total`.
pub fn theorem(max_total: usize) -> CheckReport {
    let mut report = CheckReport::new("theorem");
    let trees = trees_up_to(max_total);
    let pairs: Vec<(Tree, Tree)> = trees
        .iter()
        .flat_map(|t| trees.iter().map(move |s| (t.clone(), s.clone())))
        .filter(|(t, s)| t.degree() + s.degree() <= max_total)
        .collect();
    // build the diagrams once before fanning out
    for d in 0..=max_total {
        if let Err(e) = tamari::hasse_capped(d, max_total.max(tamari::DEFAULT_CAP)) {
            report.expect(false, || e.to_string());
            return report;
        }
    }
    report.absorb(par::map(&pairs, |(t, s)| theorem_case(t, s)));
    report
}

fn right_distributivity_witness(max_degree: usize) -> Option<(Tree, Tree, Tree)> {
    let trees: Vec<Tree> = (1..=max_degree).flat_map(Tree::all_of_degree).collect();
    for t in &trees {
        for r in &trees {
            for s in &trees {
                let one = |x: &Tree| TreeSet::singleton(x.clone());
                let lhs = arithmetic::multiply(&one(t), &add(r, s));
                let rhs = arithmetic::sum(
                    &arithmetic::multiply(&one(t), &one(r)),
                    &arithmetic::multiply(&one(t), &one(s)),
                );
                if lhs != rhs {
                    return Some((t.clone(), r.clone(), s.clone()));
                }
            }
        }
    }
    None
}

/// Products of trees: the worked examples, compatibility with integers,
/// associativity, left distributivity, a right-distributivity counterexample
/// and independence from the choice of decomposition word.
pub fn multiplication(max_product: usize) -> CheckReport {
    let mut report = CheckReport::new("multiplication");
    let one = |s: &str| TreeSet::singleton(s.parse().expect("literal"));
    let set = |v: &[&str]| {
        TreeSet::from_trees(
            v[0].parse::<Tree>().expect("literal").degree(),
            v.iter().map(|s| s.parse().expect("literal")),
        )
        .expect("uniform degree")
    };
    report.expect(
        arithmetic::multiply(&one("((. .) .)"), &one("(. (. .))")) == one("((. (. .)) (. .))"),
        || "((. .) .) x (. (. .)) is wrong".into(),
    );
    report.expect(
        arithmetic::multiply(&one("((. .) .)"), &one("((. .) .)"))
            == set(&["(((. .) (. .)) .)", "((((. .) .) .) .)"]),
        || "((. .) .) x ((. .) .) is wrong".into(),
    );

    for n in 0..=max_product {
        for m in 0..=max_product {
            if n * m <= max_product {
                let prod = arithmetic::multiply(&arithmetic::embed(n), &arithmetic::embed(m));
                report.expect(prod == arithmetic::embed(n * m), || {
                    format!("embed({n}) x embed({m}) != embed({})", n * m)
                });
            }
        }
    }

    // associativity on single trees with degree product <= 8
    let mut triples = Vec::new();
    for a in 1..=8usize {
        for b in 1..=8 / a {
            for c in 1..=8 / (a * b) {
                for x in Tree::all_of_degree(a) {
                    for y in Tree::all_of_degree(b) {
                        for z in Tree::all_of_degree(c) {
                            triples.push([x.clone(), y.clone(), z.clone()]);
                        }
                    }
                }
            }
        }
    }
    report.absorb(par::map(&triples, |[x, y, z]| {
        let (x1, y1, z1) = (
            TreeSet::singleton(x.clone()),
            TreeSet::singleton(y.clone()),
            TreeSet::singleton(z.clone()),
        );
        let lhs = arithmetic::multiply(&arithmetic::multiply(&x1, &y1), &z1);
        let rhs = arithmetic::multiply(&x1, &arithmetic::multiply(&y1, &z1));
        (lhs != rhs).then(|| format!("(x y) z != x (y z) for x={x} y={y} z={z}"))
    }));

    // left distributivity: (r + s) t = r t + s t
    let small: Vec<Tree> = (1..=2).flat_map(Tree::all_of_degree).collect();
    for r in &small {
        for s in &small {
            for t in &small {
                let ts = TreeSet::singleton(t.clone());
                let lhs = arithmetic::multiply(&add(r, s), &ts);
                let rhs = arithmetic::sum(
                    &arithmetic::multiply(&TreeSet::singleton(r.clone()), &ts),
                    &arithmetic::multiply(&TreeSet::singleton(s.clone()), &ts),
                );
                report.expect(lhs == rhs, || {
                    format!("left distributivity fails for r={r} s={s} t={t}")
                });
            }
        }
    }

    match right_distributivity_witness(2) {
        Some((t, r, s)) => report
            .notes
            .push(format!("right distributivity fails: t={t} r={r} s={s}")),
        None => report.expect(false, || {
            "no right-distributivity counterexample up to degree 2".into()
        }),
    }

    // any word evaluating to {u} gives the same product as the canonical one
    for d in 1..=3 {
        let words = Word::all_with_ones(d);
        for u in Tree::all_of_degree(d) {
            let target = TreeSet::singleton(u.clone());
            let alternatives: Vec<&Word> = words
                .iter()
                .filter(|w| arithmetic::evaluate(w) == target)
                .collect();
            for factor in (1..=2)
                .flat_map(Tree::all_of_degree)
                .map(TreeSet::singleton)
                .chain([arithmetic::embed(2)])
            {
                let expected = arithmetic::multiply(&target, &factor);
                for w in &alternatives {
                    report.expect(arithmetic::evaluate_with(w, &factor) == expected, || {
                        format!("word {w} for {u} gives a different product with {factor:?}")
                    });
                }
            }
        }
    }
    report
}

/// The three dendriform relations for polynomials `r, s, t`.
pub fn dendriform_case(r: &Polynomial, s: &Polynomial, t: &Polynomial) -> Option<String> {
    let go = || -> Result<Option<&'static str>, crate::dendriform::PolyError> {
        if r.prec(s)?.prec(t)? != r.prec(&s.mul(t))? {
            return Ok(Some("(r < s) < t = r < (s t)"));
        }
        if r.succ(s)?.prec(t)? != r.succ(&s.prec(t)?)? {
            return Ok(Some("(r > s) < t = r > (s < t)"));
        }
        if r.mul(s).succ(t)? != r.succ(&s.succ(t)?)? {
            return Ok(Some("(r s) > t = r > (s > t)"));
        }
        if r.mul(s) != r.prec(s)?.add(&r.succ(s)?) {
            return Ok(Some("r s = r < s + r > s"));
        }
        Ok(None)
    };
    match go() {
        Ok(None) => None,
        Ok(Some(rel)) => Some(format!("{rel} fails for r={r} s={s} t={t}")),
        Err(e) => Some(format!("r={r} s={s} t={t}: {e}")),
    }
}

/// A seeded random polynomial without constant term.
pub fn random_polynomial(rng: &mut impl Rng, max_degree: usize, max_terms: usize) -> Polynomial {
    let trees: Vec<Tree> = (1..=max_degree).flat_map(Tree::all_of_degree).collect();
    let n = rng.gen_range(1..=max_terms);
    Polynomial::from_terms((0..n).map(|_| {
        let c = rational(rng.gen_range(-6..=6), rng.gen_range(1..=5));
        (c, trees.choose(rng).expect("nonempty").clone())
    }))
}

/// Dendriform relations on monomial triples of total degree `<= max_total`
/// and on `random` seeded rational combinations.
pub fn dendriform(max_total: usize, random: usize) -> CheckReport {
    let mut report = CheckReport::new("dendriform");
    let triples: Vec<[Polynomial; 3]> = triples_up_to(max_total)
        .into_iter()
        .filter(|ts| ts.iter().all(|t| !t.is_leaf()))
        .map(|ts| ts.map(Polynomial::monomial))
        .collect();
    report.absorb(par::map(&triples, |[r, s, t]| dendriform_case(r, s, t)));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sampled: Vec<[Polynomial; 3]> = (0..random)
        .map(|_| [0, 1, 2].map(|_| random_polynomial(&mut rng, 2, 4)))
        .collect();
    report.absorb(par::map(&sampled, |[r, s, t]| dendriform_case(r, s, t)));

    for n in 0..=max_total {
        for m in 0..=(max_total - n) {
            report.expect(
                poly_of_int(n).mul(&poly_of_int(m)) == poly_of_int(n + m),
                || format!("x^{n} x^{m} != x^{}", n + m),
            );
        }
    }
    for n in 0..=max_total {
        for m in 1..=max_total {
            if n * m <= max_total {
                let ok = poly_of_int(n).compose(&poly_of_int(m)).ok() == Some(poly_of_int(n * m));
                report.expect(ok, || format!("x^{n} o x^{m} != x^{}", n * m));
            }
        }
    }
    report
}

/// Coordinate maps: code sums, word and subtree forms of the associahedron
/// coordinates, injectivity, covering differences and the canopy section.
pub fn geometry(max_degree: usize) -> CheckReport {
    let mut report = CheckReport::new("geometry");
    for k in 1..=max_degree {
        let trees = Tree::all_of_degree(k);
        let results = par::map(&trees, |t| {
            let code = geometry::tamari_code(t).ok()?;
            let assoc = geometry::loday_coords(t).ok()?;
            let by_subtrees = geometry::loday_coords_by_subtrees(t).ok()?;
            Some((code, assoc, by_subtrees))
        });
        let mut codes = Vec::new();
        let mut assoc_points = Vec::new();
        for (t, r) in trees.iter().zip(results) {
            let Some((code, assoc, by_subtrees)) = r else {
                report.expect(false, || format!("{t}: no coordinates"));
                continue;
            };
            report.expect(code.sum() == k as i64, || {
                format!("code of {t} sums to {}", code.sum())
            });
            report.expect(assoc == by_subtrees, || {
                format!("associahedron forms disagree on {t}")
            });
            report.expect(assoc.sum() == (k * (k + 1) / 2) as i64, || {
                format!("associahedron point of {t} sums to {}", assoc.sum())
            });
            codes.push(code);
            assoc_points.push(assoc);
        }
        codes.sort();
        codes.dedup();
        assoc_points.sort();
        assoc_points.dedup();
        report.expect(codes.len() == trees.len(), || {
            format!("codes collide in degree {k}")
        });
        report.expect(assoc_points.len() == trees.len(), || {
            format!("associahedron points collide in degree {k}")
        });
    }
    for d in 0..=max_degree.min(tamari::DEFAULT_CAP - 1) {
        match geometry::covering_edge_vectors(d, CoordMap::Tamari) {
            Ok(r) => {
                report.cases += r.edges.len();
                report.failures.extend(r.failures);
            }
            Err(e) => report.expect(false, || e.to_string()),
        }
    }
    for n in 0..=(max_degree + 1).min(geometry::SECTION_MAX_DEGREE - 1) {
        let canopies = Canopy::all(n);
        report.absorb(par::map(&canopies, |c| match geometry::section(c) {
            Ok(t) => match geometry::canopy(&t) {
                Ok(back) if &back == c => None,
                _ => Some(format!("canopy of section({c}) = {t} is not {c}")),
            },
            Err(e) => Some(e.to_string()),
        }));
    }
    for (sig, expected) in [
        ("-", "(. (. .))"),
        ("-+", "(. ((. .) .))"),
        ("--", "(. (. (. .)))"),
    ] {
        let got = sig.parse().ok().and_then(|c| geometry::section(&c).ok());
        report.expect(got.map(|t| t.render()).as_deref() == Some(expected), || {
            format!("section({sig}) is not {expected}")
        });
    }
    report
}

/// The cube structure of the parenthesis codes for `n = 2..=max_n`.
pub fn hypercube(max_n: usize) -> CheckReport {
    let mut report = CheckReport::new("hypercube");
    for n in 2..=max_n.min(4) {
        match geometry::verify_hypercube(n) {
            Ok(r) => {
                report.cases += r.point_count;
                report.notes.push(format!(
                    "n={n}: {} points, {} hull vertices, {} facets",
                    r.point_count,
                    r.hull_vertices.len(),
                    r.facet_count
                ));
                report
                    .failures
                    .extend(r.failures.into_iter().map(|f| format!("n={n}: {f}")));
            }
            Err(e) => report.expect(false, || format!("n={n}: {e}")),
        }
    }
    let pentagon: Vec<_> = Tree::all_of_degree(3)
        .iter()
        .map(|t| geometry::loday_coords(t).expect("nontrivial"))
        .collect();
    for i in 0..pentagon.len() {
        report.expect(
            geometry::certify_extreme(&pentagon, i, geometry::hypercube::CERTIFICATE_BOX).is_some(),
            || {
                format!(
                    "associahedron point {} is not certified extreme",
                    pentagon[i]
                )
            },
        );
    }
    report
}
