mod common;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hdisc::algebra::{discriminator_eval, ElemSet, FiniteAlgebra, VarietyClass};
use hdisc::catalog::{catalog, enum_distributive_lattices};
use hdisc::congruence::{
    boolean_projection, congruence_filters, decompose_simples, factor_complement, generated_congfilter, is_simple,
    principal_congruence, principal_generator, product, quotient, to_congruence,
};
use hdisc::decision::{
    decide_projective_finite, decide_projective_fp, diagram_formula, discriminator_term, eval_formula, two_algebra,
};
use hdisc::morphism::{is_retract, isomorphic, HomSearch, Homomorphism};
use hdisc::term::{eval_term, parse_term, DefiningPair, Equation, Term};

/// Catalogs up to size 8, generated on first use.
struct Catalogs(HashMap<VarietyClass, Vec<FiniteAlgebra>>);

impl Catalogs {
    fn up_to(&mut self, class: VarietyClass, max: usize) -> Vec<FiniteAlgebra> {
        self.0
            .entry(class)
            .or_insert_with(|| catalog(class, 8).expect("size 8 is in range"))
            .iter()
            .filter(|a| a.size() <= max)
            .cloned()
            .collect()
    }
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn four_criteria(cats: &mut Catalogs) -> Outcome {
    let (mut total, mut projective) = (0, 0);
    for class in common::box_classes() {
        for a in cats.up_to(class, 8).into_iter().filter(|a| !a.is_trivial()) {
            let v = decide_projective_finite(&a).map_err(|e| e.to_string())?;
            ensure(v.criteria.agree(), || format!("{}: {:?}", a.name(), v.criteria))?;
            total += 1;
            projective += usize::from(v.projective);
        }
    }
    Ok(format!("{total} algebras, {projective} projective"))
}

fn factor_congruences(cats: &mut Catalogs) -> Outcome {
    let mut checked = 0;
    for class in common::box_classes() {
        for a in cats.up_to(class, 8) {
            let mut seen = HashSet::new();
            for x in a.elements() {
                for y in x..a.size() {
                    let theta = principal_congruence(&a, x, y).map_err(|e| e.to_string())?;
                    if !seen.insert(theta.labels().to_vec()) {
                        continue;
                    }
                    let pair = factor_complement(&a, &theta)
                        .map_err(|e| e.to_string())?
                        .ok_or_else(|| format!("{}: θ({x},{y}) has no complement", a.name()))?;
                    let t2 = &pair.theta_prime;
                    ensure(
                        theta.intersection(t2).is_identity() && theta.join(t2).is_total() && theta.permutes_with(t2),
                        || format!("{}: complement of θ({x},{y}) is not a factor pair", a.name()),
                    )?;
                    let (_, p1) = quotient(&a, &theta).map_err(|e| e.to_string())?;
                    let (_, p2) = quotient(&a, t2).map_err(|e| e.to_string())?;
                    let map: Vec<usize> = a
                        .elements()
                        .map(|z| pair.product.index_of(p1.apply(z), p2.apply(z)))
                        .collect();
                    let iso = Homomorphism::new(&a, &pair.product.algebra, map).map_err(|e| e.to_string())?;
                    ensure(iso.is_bijective() && iso == pair.iso, || {
                        format!("{}: witness for θ({x},{y}) is not an isomorphism", a.name())
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} principal congruences"))
}

fn product_of(factors: &[FiniteAlgebra], class: VarietyClass) -> FiniteAlgebra {
    factors
        .iter()
        .fold(hdisc::congruence::trivial_algebra(class), |acc, f| product(&acc, f).expect("same class"))
}

fn simple_decomposition(cats: &mut Catalogs) -> Outcome {
    let algebras = cats.up_to(VarietyClass::Ws5, 8);
    for a in &algebras {
        let factors = decompose_simples(a).map_err(|e| e.to_string())?;
        ensure(factors.iter().all(is_simple), || format!("{}: non-simple factor", a.name()))?;
        let p = product_of(&factors, a.class());
        ensure(isomorphic(a, &p).map_err(|e| e.to_string())?.is_some(), || {
            format!("{}: product of factors is not isomorphic", a.name())
        })?;
        ensure(is_simple(a) == (a.open_elements().len() == 2), || {
            format!("{}: simplicity differs from two open elements", a.name())
        })?;
    }
    Ok(format!("{} algebras", algebras.len()))
}

fn retract_theorem(cats: &mut Catalogs) -> Outcome {
    let mut pairs = 0;
    for class in [VarietyClass::Ws5, VarietyClass::Hri, VarietyClass::Hdp(8), VarietyClass::Dht(8)] {
        let algebras = cats.up_to(class, 12);
        for b in &algebras {
            let b_full = !b.is_trivial()
                && HomSearch::new(b, &two_algebra(class)).onto(true).first().map_err(|e| e.to_string())?.is_some();
            for c in algebras.iter().filter(|c| b.size() * c.size() <= 12) {
                let p = product(b, c).map_err(|e| e.to_string())?;
                let witness = is_retract(&p, b).map_err(|e| e.to_string())?;
                let hom = HomSearch::new(b, c).first().map_err(|e| e.to_string())?;
                ensure(witness.is_some() == hom.is_some(), || {
                    format!("{} in {} x {}: retract {} but hom {}", b.name(), b.name(), c.name(), witness.is_some(), hom.is_some())
                })?;
                if let Some(w) = &witness {
                    let composite: Vec<usize> = b.elements().map(|x| w.retraction.apply(w.injection.apply(x))).collect();
                    ensure(w.composite_is_identity && composite == b.elements().collect::<Vec<_>>(), || {
                        format!("{} x {}: witness does not compose to the identity", b.name(), c.name())
                    })?;
                }
                ensure(!b_full || witness.is_some(), || {
                    format!("{} maps onto 2 but is not a retract of {} x {}", b.name(), b.name(), c.name())
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs"))
}

/// Least subset containing `s` and 1 closed under meets, upward closure and □.
fn closure_oracle(a: &FiniteAlgebra, s: ElemSet) -> ElemSet {
    let mut f = s;
    f.insert(a.top());
    loop {
        let mut g = f;
        for x in f.iter() {
            g.insert(a.nec(x));
            for y in f.iter() {
                g.insert(a.meet(x, y));
            }
            for y in a.elements().filter(|&y| a.leq(x, y)) {
                g.insert(y);
            }
        }
        if g == f {
            return f;
        }
        f = g;
    }
}

fn filter_generation(cats: &mut Catalogs) -> Outcome {
    let (mut subsets, mut filters) = (0, 0);
    for class in common::all_classes() {
        for a in cats.up_to(class, 6) {
            let mut closed = HashSet::new();
            for bits in 0..1u64 << a.size() {
                let s = ElemSet::from_bits(bits);
                let expected = closure_oracle(&a, s);
                let got = generated_congfilter(&a, s);
                ensure(got.carrier() == expected, || {
                    format!("{}: {:?} generates {:?}, oracle {:?}", a.name(), s.to_vec(), got.to_vec(), expected.to_vec())
                })?;
                closed.insert(expected.bits());
                subsets += 1;
            }
            let listed: HashSet<u64> = congruence_filters(&a).iter().map(|f| f.carrier().bits()).collect();
            ensure(listed == closed, || format!("{}: congruence filter list differs", a.name()))?;
            for f in congruence_filters(&a) {
                let b = principal_generator(&a, &f).map_err(|e| e.to_string())?;
                let up: ElemSet = a.elements().filter(|&x| a.leq(a.nec(b), x)).collect();
                ensure(f.contains(b) && up == f.carrier(), || {
                    format!("{}: {b} does not generate {:?}", a.name(), f.to_vec())
                })?;
                filters += 1;
            }
        }
    }
    Ok(format!("{subsets} subsets, {filters} filters"))
}

fn boolean_projection_check(cats: &mut Catalogs) -> Outcome {
    let mut quotients = 0;
    for class in common::all_classes() {
        for a in cats.up_to(class, 8) {
            let (q, proj) = boolean_projection(&a).map_err(|e| e.to_string())?;
            ensure(q.has_boolean_reduct(), || format!("{}: projection is not Boolean", a.name()))?;
            for f in congruence_filters(&a) {
                let (image, pi) = quotient(&a, &to_congruence(&a, &f).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                if !image.has_boolean_reduct() {
                    continue;
                }
                let factors = a.elements().all(|x| {
                    a.elements()
                        .all(|y| proj.apply(x) != proj.apply(y) || pi.apply(x) == pi.apply(y))
                });
                ensure(factors, || {
                    format!("{}: Boolean quotient by {:?} does not factor through", a.name(), f.to_vec())
                })?;
                quotients += 1;
            }
        }
    }
    Ok(format!("{quotients} Boolean quotients"))
}

fn operation_collapses(cats: &mut Catalogs) -> Outcome {
    let mut counts = BTreeMap::new();
    for class in [
        VarietyClass::Hri,
        VarietyClass::Hdp(1),
        VarietyClass::Hdp(8),
        VarietyClass::Dht(1),
        VarietyClass::Dht(8),
    ] {
        for a in cats.up_to(class, 8).into_iter().filter(|a| a.has_boolean_reduct()) {
            let ok = a.elements().all(|x| match class {
                VarietyClass::Hri => a.invol(x) == Some(a.neg(x)),
                VarietyClass::Hdp(_) => a.dualneg(x) == Some(a.neg(x)),
                _ => a.elements().all(|y| a.dimpl(x, y) == Some(a.neg(a.imp(x, y)))),
            });
            ensure(ok, || format!("{}: operation does not collapse", a.name()))?;
            *counts.entry(class.to_string()).or_insert(0) += 1;
        }
    }
    ensure(counts.len() == 5, || "some class has no Boolean algebra".into())?;
    Ok(counts.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>().join(", "))
}

fn discriminator(cats: &mut Catalogs) -> Outcome {
    let t = discriminator_term(Term::var("x"), Term::var("y"), Term::var("z"));
    let (mut simple, mut triples) = (0, 0);
    for class in common::box_classes() {
        for a in cats.up_to(class, 8).into_iter().filter(is_simple) {
            for x in a.elements() {
                for y in a.elements() {
                    for z in a.elements() {
                        let want = if x == y { z } else { x };
                        let env = BTreeMap::from([("x".to_string(), x), ("y".to_string(), y), ("z".to_string(), z)]);
                        let by_term = eval_term(&a, &t, &env).map_err(|e| e.to_string())?;
                        let direct = discriminator_eval(&a, x, y, z).map_err(|e| e.to_string())?;
                        ensure(by_term == want && direct == want, || {
                            format!("{}: t({x},{y},{z}) = {by_term}, expected {want}", a.name())
                        })?;
                        triples += 1;
                    }
                }
            }
            simple += 1;
        }
    }
    Ok(format!("{simple} simple algebras, {triples} triples"))
}

/// Value of `t` in the two-element algebra, where □ and ◇ are the identity and
/// ∼, ⌐ are complement.
fn eval_bool(t: &Term, env: &HashMap<&str, bool>) -> bool {
    match t {
        Term::Var(v) => env[v.as_str()],
        Term::Const0 => false,
        Term::Const1 => true,
        Term::Meet(a, b) => eval_bool(a, env) && eval_bool(b, env),
        Term::Join(a, b) => eval_bool(a, env) || eval_bool(b, env),
        Term::Impl(a, b) => !eval_bool(a, env) || eval_bool(b, env),
        Term::Dimpl(a, b) => eval_bool(a, env) && !eval_bool(b, env),
        Term::Neg(a) | Term::Invol(a) | Term::Dualneg(a) => !eval_bool(a, env),
        Term::Box(a) | Term::Diamond(a) => eval_bool(a, env),
    }
}

fn satisfiable_in_two(d: &DefiningPair) -> bool {
    let k = d.vars().len();
    (0..1u32 << k).any(|bits| {
        let env: HashMap<&str, bool> = d
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), bits & 1 << i != 0))
            .collect();
        d.atoms().iter().all(|eq| eval_bool(&eq.lhs, &env) == eval_bool(&eq.rhs, &env))
    })
}

fn presentation(vars: &[&str], atoms: &[(&str, &str)]) -> DefiningPair {
    DefiningPair::new(
        vars.iter().map(|v| v.to_string()).collect(),
        atoms
            .iter()
            .map(|(l, r)| Equation::new(parse_term(l).expect("fixed term"), parse_term(r).expect("fixed term")))
            .collect(),
    )
    .expect("variables are declared")
}

fn presentations(_: &mut Catalogs) -> Outcome {
    let suite: Vec<(VarietyClass, DefiningPair)> = vec![
        (VarietyClass::Ws5, presentation(&["x"], &[("[]x", "x")])),
        (VarietyClass::Ws5, presentation(&["x"], &[("![]x & ![]!x", "1")])),
        (VarietyClass::Ws5, presentation(&[], &[])),
        (VarietyClass::Ws5, presentation(&["x", "y"], &[("x & y", "1"), ("x | y", "0")])),
        (VarietyClass::Ws5, presentation(&["x", "y"], &[("x -> y", "1"), ("<>x", "1")])),
        (VarietyClass::Ws5, presentation(&["x"], &[("x | !x", "0")])),
        (VarietyClass::Hri, presentation(&["x"], &[("~x", "x")])),
        (VarietyClass::Hri, presentation(&["x", "y"], &[("~x & y", "1"), ("[]y -> x", "1")])),
        (VarietyClass::Hdp(1), presentation(&["x"], &[("+x", "x")])),
        (VarietyClass::Hdp(2), presentation(&["x", "y"], &[("+x | y", "1"), ("x & y", "0")])),
        (VarietyClass::Dht(1), presentation(&["x", "y"], &[("x -< y", "1")])),
        (VarietyClass::Dht(3), presentation(&["x", "y", "z"], &[("x -< y", "z"), ("z", "0"), ("x", "1"), ("y", "0")])),
        (VarietyClass::Dht(1), presentation(&["x"], &[("0", "1")])),
    ];
    let mut projective = 0;
    for (class, d) in &suite {
        let v = decide_projective_fp(*class, d).map_err(|e| e.to_string())?;
        let expected = satisfiable_in_two(d);
        ensure(v.projective == expected, || format!("{class} {:?}: verdict {}, oracle {expected}", d.atoms(), v.projective))?;
        if let Some(cert) = &v.certificate {
            let env: HashMap<&str, bool> = cert.iter().map(|(k, &x)| (k.as_str(), x == 1)).collect();
            ensure(d.atoms().iter().all(|eq| eval_bool(&eq.lhs, &env) == eval_bool(&eq.rhs, &env)), || {
                format!("{class} {:?}: certificate does not satisfy the relations", d.atoms())
            })?;
        }
        projective += usize::from(v.projective);
    }
    Ok(format!("{} presentations, {projective} projective", suite.len()))
}

fn enumeration(cats: &mut Catalogs) -> Outcome {
    let expected = [1, 1, 1, 2, 3, 5, 8, 15];
    let heyting = cats.up_to(VarietyClass::Heyting, 8);
    for n in 1..=8 {
        let library = enum_distributive_lattices(n).map_err(|e| e.to_string())?.len();
        let in_catalog = heyting.iter().filter(|a| a.size() == n).count();
        let oracle = common::oracle_lattice_count(n);
        ensure(library == oracle && in_catalog == oracle && oracle == expected[n - 1], || {
            format!("size {n}: library {library}, catalog {in_catalog}, oracle {oracle}, expected {}", expected[n - 1])
        })?;
    }
    Ok(format!("counts {expected:?}"))
}

fn diagram_soundness(cats: &mut Catalogs) -> Outcome {
    let mut checked = 0;
    for class in common::all_classes() {
        let m = two_algebra(class);
        let delta = diagram_formula(&m);
        for c in cats.up_to(class, 6) {
            let holds = eval_formula(&c, &delta).map_err(|e| e.to_string())?;
            let iso = isomorphic(&c, &m).map_err(|e| e.to_string())?.is_some();
            ensure(holds == iso, || format!("{}: formula {holds}, isomorphic {iso}", c.name()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} algebras"))
}

type Criterion = (&'static str, fn(&mut Catalogs) -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 11] = [
        ("four projectivity criteria agree", four_criteria, secs(120)),
        ("principal congruences are factor congruences", factor_congruences, secs(60)),
        ("WS5 algebras decompose into simple factors", simple_decomposition, None),
        ("retracts of products match homomorphism existence", retract_theorem, secs(120)),
        ("generated congruence filters match the closure oracle", filter_generation, None),
        ("Boolean projection is the least Boolean quotient", boolean_projection_check, None),
        ("extra operations collapse on Boolean reducts", operation_collapses, None),
        ("discriminator term on simple algebras", discriminator, None),
        ("presentation projectivity matches satisfiability in 2", presentations, secs(1)),
        ("distributive lattice counts match the poset oracle", enumeration, secs(60)),
        ("diagram formula of 2 characterises 2", diagram_soundness, None),
    ];
    let mut cats = Catalogs(HashMap::new());
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(&mut cats);
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(detail), Some(limit)) if elapsed > *limit => {
                Err(format!("{detail}; took longer than {}s", limit.as_secs()))
            }
            (o, _) => o,
        };
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{status} {:>2} {name} ({detail}; {:.2}s)", i + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
