//! Acceptance criteria 1 to 8, one PASS/FAIL line each.
//!
//! Run with `cargo test -p pil --test acceptance -- --nocapture` to see the
//! report.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use pil::bisim::{bisimilar_multi, bisimilar_pointwise, bisimilar_single, logically_equivalent};
use pil::canonical::{canonical_model_multi, canonical_model_single, closed_sets, CanonicalModelSpec};
use pil::dependency::{
    fd_implied, literals_consistent, satisfiable, Fd, FdSet, Literal, DEFAULT_GUARD,
};
use pil::proofcheck::{builtin_derivations, check_proof, mutation_corpus, Proof};
use pil::semantics::{
    canonical_key, enumerate_models_up_to, eval, eval_normal, pointed, Bounds, Model,
    ModelEnumerator, PointedModel,
};
use pil::syntax::{agents_of, signature_of, translate, AgentId, ConstId, DepAtom, Formula, Mode, NormalFormula};

struct Report {
    lines: Vec<(u8, bool, String)>,
}

impl Report {
    fn record(&mut self, n: u8, pass: bool, detail: String) {
        println!("criterion {n}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
        self.lines.push((n, pass, detail));
    }
}

fn c(name: &str) -> ConstId {
    ConstId::new(name).unwrap()
}

fn agent(name: &str) -> AgentId {
    AgentId::new(name).unwrap()
}

fn set(names: &[&str]) -> BTreeSet<ConstId> {
    names.iter().map(|n| c(n)).collect()
}

/// Pointed models up to the bounds, one per isomorphism class.
fn distinct_pointed(models: impl Iterator<Item = Model>) -> Vec<PointedModel> {
    let mut seen = HashSet::new();
    models
        .flat_map(pointed)
        .filter(|pm| seen.insert(canonical_key(pm)))
        .collect()
}

/// Every formula of depth at most `depth` over the given constants and agents.
fn formula_pool(consts: &[ConstId], agents: &[AgentId], depth: usize) -> Vec<Formula> {
    let mut levels: Vec<Vec<Formula>> = vec![std::iter::once(Formula::Top)
        .chain(
            agents
                .iter()
                .flat_map(|a| consts.iter().map(move |k| Formula::kv(a.clone(), k.clone()))),
        )
        .collect()];
    for _ in 0..depth {
        let below: Vec<Formula> = levels.iter().flatten().cloned().collect();
        let mut next = Vec::new();
        for f in &below {
            next.push(Formula::not(f.clone()));
            for k in consts {
                next.push(Formula::inspect(k.clone(), f.clone()));
            }
            for g in &below {
                next.push(Formula::and(f.clone(), g.clone()));
            }
        }
        let known: HashSet<Formula> = below.into_iter().collect();
        next.retain(|f| !known.contains(f));
        next.sort();
        next.dedup();
        levels.push(next);
    }
    levels.into_iter().flatten().collect()
}

fn holds(pm: &PointedModel, f: &Formula) -> bool {
    eval(pm, f).expect("formula within the model signature")
}

struct Sweep {
    models: Vec<PointedModel>,
    pools: BTreeMap<(usize, usize), Vec<Formula>>,
}

impl Sweep {
    fn new() -> Self {
        let models = distinct_pointed(enumerate_models_up_to(Bounds::new(3, 2, 2, 2)));
        let mut pools = BTreeMap::new();
        for k in 1..=2 {
            for n in 1..=2 {
                let consts = pil::semantics::standard_constants(k);
                let agents = pil::semantics::standard_agents(n);
                pools.insert((k, n), formula_pool(&consts, &agents, 2));
            }
        }
        Sweep { models, pools }
    }

    fn pool(&self, pm: &PointedModel) -> &[Formula] {
        let m = pm.model();
        &self.pools[&(m.signature().len(), m.agents().len())]
    }
}

/// Instances of the valid schemas at one pointed model; returns the first
/// falsified instance.
fn falsified_instance(pm: &PointedModel, pool: &[Formula]) -> Option<Formula> {
    let m = pm.model();
    let consts = m.signature().to_vec();
    let agents = m.agents().to_vec();
    let mut instances = Vec::new();
    for k in &consts {
        instances.push(Formula::diamond(k.clone(), Formula::Top));
        for a in &agents {
            instances.push(Formula::inspect(k.clone(), Formula::kv(a.clone(), k.clone())));
            for d in &consts {
                let kv = Formula::kv(a.clone(), k.clone());
                instances.push(Formula::implies(kv.clone(), Formula::inspect(d.clone(), kv)));
            }
        }
    }
    for f in instances {
        if !holds(pm, &f) {
            return Some(f);
        }
    }
    for phi in pool {
        let phi_agents = agents_of(phi);
        for k in &consts {
            let det = Formula::iff(
                Formula::diamond(k.clone(), phi.clone()),
                Formula::inspect(k.clone(), phi.clone()),
            );
            if !holds(pm, &det) {
                return Some(det);
            }
            for d in &consts {
                let comm = Formula::iff(
                    Formula::inspect(k.clone(), Formula::inspect(d.clone(), phi.clone())),
                    Formula::inspect(d.clone(), Formula::inspect(k.clone(), phi.clone())),
                );
                if !holds(pm, &comm) {
                    return Some(comm);
                }
            }
            for a in &agents {
                if phi_agents.iter().all(|b| b == a) {
                    let rir = Formula::implies(
                        Formula::kv(a.clone(), k.clone()),
                        Formula::implies(Formula::inspect(k.clone(), phi.clone()), phi.clone()),
                    );
                    if !holds(pm, &rir) {
                        return Some(rir);
                    }
                }
            }
        }
    }
    None
}

fn criterion_1(report: &mut Report, sweep: &Sweep) {
    let mut checked = 0usize;
    let mut failure = None;
    for pm in &sweep.models {
        checked += 1;
        if let Some(f) = falsified_instance(pm, sweep.pool(pm)) {
            failure = Some(format!("{f} false at {}", pm.actual_state()));
            break;
        }
    }
    let pool_size = sweep.pools[&(2, 2)].len();
    match failure {
        None => report.record(
            1,
            true,
            format!("{checked} pointed models, formula pool of {pool_size}"),
        ),
        Some(why) => report.record(1, false, why),
    }
}

fn criterion_2(report: &mut Report, sweep: &Sweep) {
    let ir = pil::syntax::parse_formula("Kv_1(c) -> ([c]Kv_2(d) -> Kv_2(d))", Mode::Multi).unwrap();
    let countermodel = sweep.models.iter().find(|pm| {
        let m = pm.model();
        m.agents().len() == 2 && m.signature().len() == 2 && !holds(pm, &ir)
    });
    let mut single_failure = None;
    let mut single_checked = 0usize;
    'outer: for pm in sweep.models.iter().filter(|pm| pm.model().agents().len() == 1) {
        let a = pm.model().agents()[0].clone();
        for k in pm.model().signature() {
            for phi in sweep.pool(pm) {
                single_checked += 1;
                let inst = Formula::implies(
                    Formula::kv(a.clone(), k.clone()),
                    Formula::implies(Formula::inspect(k.clone(), phi.clone()), phi.clone()),
                );
                if !holds(pm, &inst) {
                    single_failure = Some(inst);
                    break 'outer;
                }
            }
        }
    }
    match (countermodel, single_failure) {
        (Some(pm), None) => report.record(
            2,
            true,
            format!(
                "IR falsified at {} in a {}-state two-agent model; {single_checked} single-agent instances hold",
                pm.actual_state(),
                pm.model().num_states()
            ),
        ),
        (None, _) => report.record(2, false, "no two-agent countermodel to IR".into()),
        (_, Some(f)) => report.record(2, false, format!("single-agent IR instance {f} fails")),
    }
}

fn criterion_3(report: &mut Report) {
    let star = AgentId::single();
    let chain = FdSet::new(star, set(&["c", "d", "e"]))
        .with(Fd::new(set(&["c"]), set(&["d"])))
        .unwrap()
        .with(Fd::new(set(&["d"]), set(&["e"])))
        .unwrap()
        .with(Fd::new(set(&[]), set(&["e"])))
        .unwrap();
    let closed = closed_sets(&chain);
    let closed_ok = closed == vec![set(&["e"]), set(&["d", "e"]), set(&["c", "d", "e"])];
    let pm = canonical_model_single(&CanonicalModelSpec::single(chain)).unwrap();
    let m = pm.model();
    let table: Vec<(String, Vec<String>)> = m
        .states()
        .iter()
        .map(|s| {
            let row = ["c", "d", "e"]
                .iter()
                .map(|k| m.value_of(s, &c(k)).unwrap().to_string())
                .collect();
            (s.clone(), row)
        })
        .collect();
    let expected_table: Vec<(String, Vec<String>)> = [
        ("{e}", ["1", "1", "0"]),
        ("{d,e}", ["1", "0", "0"]),
        ("{c,d,e}", ["0", "0", "0"]),
    ]
    .iter()
    .map(|(s, r)| (s.to_string(), r.iter().map(|v| v.to_string()).collect()))
    .collect();
    let table_ok = table == expected_table && pm.actual_state() == "{c,d,e}";

    let sig = set(&["c", "d"]);
    let a1 = FdSet::new(agent("1"), sig.clone())
        .with(Fd::new(set(&["c"]), set(&["d"])))
        .unwrap();
    let a2 = FdSet::new(agent("2"), sig.clone())
        .with(Fd::new(set(&["d"]), set(&["c"])))
        .unwrap();
    let fig = canonical_model_multi(&CanonicalModelSpec::multi(sig, [a1, a2])).unwrap();
    let fm = fig.model();
    let classes = |a: &str| -> Vec<Vec<String>> {
        fm.partition(&agent(a))
            .unwrap()
            .into_iter()
            .map(|cl| cl.into_iter().map(String::from).collect())
            .collect()
    };
    let owned = |v: &[&[&str]]| -> Vec<Vec<String>> {
        v.iter().map(|cl| cl.iter().map(|s| s.to_string()).collect()).collect()
    };
    let fig_values: Vec<(String, String, String)> = fm
        .states()
        .iter()
        .map(|s| {
            (
                s.clone(),
                fm.value_of(s, &c("c")).unwrap().to_string(),
                fm.value_of(s, &c("d")).unwrap().to_string(),
            )
        })
        .collect();
    let expected_values: Vec<(String, String, String)> = [
        ("{}", "1", "1"),
        ("{c}", "0", "1"),
        ("{d}", "1", "0"),
        ("{c,d}", "0", "0"),
    ]
    .iter()
    .map(|(s, x, y)| (s.to_string(), x.to_string(), y.to_string()))
    .collect();
    let fig_ok = classes("1") == owned(&[&["{}", "{d}", "{c,d}"], &["{c}"]])
        && classes("2") == owned(&[&["{}", "{c}", "{c,d}"], &["{d}"]])
        && fig_values == expected_values
        && fig.actual_state() == "{c,d}";
    report.record(
        3,
        closed_ok && table_ok && fig_ok,
        format!("closed sets {closed_ok}, value table {table_ok}, two-agent model {fig_ok}"),
    );
}

const FD_SIG: [&str; 3] = ["c", "d", "e"];

fn fd_of(lhs: u8, rhs: u8) -> Fd {
    let pick = |mask: u8| (0..3).filter(|b| mask >> b & 1 == 1).map(|b| c(FD_SIG[b])).collect::<BTreeSet<_>>();
    Fd::new(pick(lhs), pick(rhs))
}

/// Bit `8 * lhs + rhs` is set when the dependency holds at the pointed model.
fn satisfied_fds(states: u8, actual: u8) -> u64 {
    let mut out = 0u64;
    for lhs in 0..8u8 {
        let agree = |s: u8, mask: u8| (s ^ actual) & mask == 0;
        let alive: Vec<u8> = (0..8u8).filter(|&s| states >> s & 1 == 1 && agree(s, lhs)).collect();
        for rhs in 0..8u8 {
            if alive.iter().all(|&s| agree(s, rhs)) {
                out |= 1 << (8 * lhs + rhs);
            }
        }
    }
    out
}

fn criterion_4(report: &mut Report) {
    let mut models = Vec::new();
    for states in 1..=255u8 {
        for actual in 0..8u8 {
            if states >> actual & 1 == 1 {
                models.push(satisfied_fds(states, actual));
            }
        }
    }
    let oracle = |sigma: u64| -> u64 {
        models
            .iter()
            .filter(|&&m| m & sigma == sigma)
            .fold(u64::MAX, |acc, &m| acc & m)
    };
    let mut mismatches = Vec::new();
    let mut check = |sigma: u64| {
        let mut fds = FdSet::new(AgentId::single(), set(&FD_SIG));
        for bit in 0..64 {
            if sigma >> bit & 1 == 1 {
                fds.insert(fd_of(bit / 8, bit % 8)).unwrap();
            }
        }
        let entailed = oracle(sigma);
        for bit in 0..64u8 {
            let ours = fd_implied(&fds, &fd_of(bit / 8, bit % 8)).unwrap();
            if ours != (entailed >> bit & 1 == 1) && mismatches.len() < 5 {
                mismatches.push(format!("{sigma:#x} query {}", fd_of(bit / 8, bit % 8)));
            }
        }
    };
    let nontrivial: Vec<u8> = (0..8u8)
        .flat_map(|lhs| (0..3).map(move |b| (lhs, 1u8 << b)))
        .filter(|(lhs, rhs)| lhs & rhs == 0)
        .map(|(lhs, rhs)| 8 * lhs + rhs)
        .collect();
    assert_eq!(nontrivial.len(), 12);
    for choice in 0..(1u32 << nontrivial.len()) {
        let sigma = nontrivial
            .iter()
            .enumerate()
            .filter(|(k, _)| choice >> k & 1 == 1)
            .fold(0u64, |acc, (_, &bit)| acc | 1 << bit);
        check(sigma);
    }
    let mut rng = StdRng::seed_from_u64(4);
    let random = 10_000;
    for _ in 0..random {
        let density = rng.gen_range(1..=12);
        let sigma = (0..64).filter(|_| rng.gen_range(0..64) < density).fold(0u64, |a, b| a | 1 << b);
        check(sigma);
    }
    report.record(
        4,
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("4096 normalized sets and {random} random sets, 64 queries each, over 1024 pointed models")
        } else {
            format!("disagreements: {}", mismatches.join("; "))
        },
    );
}

fn random_formula(rng: &mut StdRng, consts: &[ConstId], agents: &[AgentId], depth: usize) -> Formula {
    let leaf = depth == 0 || rng.gen_bool(0.2);
    if leaf {
        return if rng.gen_bool(0.1) {
            Formula::Top
        } else {
            Formula::kv(agents.choose(rng).unwrap().clone(), consts.choose(rng).unwrap().clone())
        };
    }
    match rng.gen_range(0..6) {
        0 => Formula::not(random_formula(rng, consts, agents, depth - 1)),
        1 | 2 => Formula::and(
            random_formula(rng, consts, agents, depth - 1),
            random_formula(rng, consts, agents, depth - 1),
        ),
        3 => Formula::implies(
            random_formula(rng, consts, agents, depth - 1),
            random_formula(rng, consts, agents, depth - 1),
        ),
        _ => Formula::inspect(
            consts.choose(rng).unwrap().clone(),
            random_formula(rng, consts, agents, depth - 1),
        ),
    }
}

fn random_model(rng: &mut StdRng, consts: &[ConstId], agents: &[AgentId]) -> PointedModel {
    let states = rng.gen_range(1..=4);
    let domain = rng.gen_range(1..=3);
    let mut b = Model::builder()
        .constants(consts.iter().map(ConstId::as_str))
        .domain((0..domain).map(|v| v.to_string()));
    if !agents[0].is_single() {
        b = b.agents(agents.iter().map(AgentId::as_str));
    }
    for s in 0..states {
        let row: Vec<String> = consts.iter().map(|_| rng.gen_range(0..domain).to_string()).collect();
        b = b.row(&format!("s{s}"), row);
    }
    for a in agents {
        let labels: Vec<usize> = (0..states).map(|_| rng.gen_range(0..states)).collect();
        let mut classes: BTreeMap<usize, Vec<String>> = BTreeMap::new();
        for (s, l) in labels.iter().enumerate() {
            classes.entry(*l).or_default().push(format!("s{s}"));
        }
        b = b.partition(a.as_str(), classes.into_values());
    }
    let model = b.build().unwrap();
    let actual = rng.gen_range(0..states);
    PointedModel::at(model, actual)
}

fn criterion_5(report: &mut Report) {
    let mut rng = StdRng::seed_from_u64(5);
    let consts = vec![c("c"), c("d"), c("e")];
    let single = vec![AgentId::single()];
    let multi = vec![agent("1"), agent("2")];
    let mut pairs = 0usize;
    let mut failure = None;
    for k in 0..2000 {
        let agents = if k % 2 == 0 { &single } else { &multi };
        let f = random_formula(&mut rng, &consts, agents, 4);
        let nf = translate(&f);
        for _ in 0..4 {
            let pm = random_model(&mut rng, &consts, agents);
            pairs += 1;
            let direct = holds(&pm, &f);
            let via_normal = eval_normal(&pm, &nf).unwrap();
            let via_formula = holds(&pm, &nf.to_formula());
            if direct != via_normal || direct != via_formula {
                failure.get_or_insert_with(|| format!("{f} at {}", pm.actual_state()));
            }
        }
    }
    report.record(
        5,
        failure.is_none(),
        failure.unwrap_or_else(|| format!("2000 formulas, {pairs} formula-model pairs")),
    );
}

struct SixReport {
    pairs: usize,
    equivalent: usize,
    witnesses: Vec<(PointedModel, PointedModel)>,
    unsound: usize,
    pointwise_agrees: bool,
}

fn compare_all(models: &[&PointedModel], multi: bool) -> SixReport {
    let mut groups: BTreeMap<(Vec<ConstId>, Vec<AgentId>), Vec<&PointedModel>> = BTreeMap::new();
    for pm in models {
        let m = pm.model();
        groups
            .entry((m.signature().to_vec(), m.agents().to_vec()))
            .or_default()
            .push(pm);
    }
    let mut out = SixReport {
        pairs: 0,
        equivalent: 0,
        witnesses: Vec::new(),
        unsound: 0,
        pointwise_agrees: true,
    };
    for group in groups.values() {
        for (i, a) in group.iter().enumerate() {
            for b in &group[i..] {
                out.pairs += 1;
                let eq = logically_equivalent(a, b);
                let bis = if multi {
                    bisimilar_multi(a, b).unwrap().is_some()
                } else {
                    bisimilar_single(a, b).unwrap()
                };
                out.equivalent += eq as usize;
                if multi && bisimilar_pointwise(a, b).unwrap() != eq {
                    out.pointwise_agrees = false;
                }
                match (bis, eq) {
                    (true, false) => out.unsound += 1,
                    (false, true) => out.witnesses.push(((*a).clone(), (*b).clone())),
                    _ => {}
                }
            }
        }
    }
    out
}

fn describe(pm: &PointedModel) -> String {
    let m = pm.model();
    let mut parts = Vec::new();
    for s in m.states() {
        let vals: Vec<String> = m
            .signature()
            .iter()
            .map(|k| format!("{k}={}", m.value_of(s, k).unwrap()))
            .collect();
        parts.push(format!("{s}({})", vals.join(",")));
    }
    for a in m.agents() {
        let classes: Vec<String> = m
            .partition(a)
            .unwrap()
            .iter()
            .map(|cl| format!("{{{}}}", cl.join(",")))
            .collect();
        parts.push(format!("R{a}={}", classes.join("")));
    }
    format!("[{}] at {}", parts.join(" "), pm.actual_state())
}

fn criterion_6(report: &mut Report, sweep: &Sweep) -> (SixReport, SixReport) {
    let singles: Vec<&PointedModel> = sweep.models.iter().filter(|pm| pm.model().agents().len() == 1).collect();
    let multis: Vec<&PointedModel> = sweep.models.iter().filter(|pm| pm.model().agents().len() == 2).collect();
    let one = compare_all(&singles, false);
    let two = compare_all(&multis, true);
    let single_ok = one.witnesses.is_empty() && one.unsound == 0;
    let multi_ok = two.witnesses.is_empty() && two.unsound == 0;
    let mut detail = format!(
        "single: {} pairs, {} equivalent, {} mismatches; multi: {} pairs, {} equivalent, {} equivalent-but-not-bisimilar, {} bisimilar-but-not-equivalent",
        one.pairs,
        one.equivalent,
        one.witnesses.len() + one.unsound,
        two.pairs,
        two.equivalent,
        two.witnesses.len(),
        two.unsound
    );
    if let Some((a, b)) = two.witnesses.first() {
        detail.push_str(&format!("; witness {} vs {}", describe(a), describe(b)));
    }
    report.record(6, single_ok && multi_ok, detail);
    (one, two)
}

fn single_literal_sets(rng: &mut StdRng, consistent: bool) -> Vec<Literal> {
    let star = AgentId::single();
    let atom = |lhs: &BTreeSet<ConstId>, rhs: &BTreeSet<ConstId>| DepAtom::new(star.clone(), lhs.clone(), rhs.clone());
    let random_set = |rng: &mut StdRng| -> BTreeSet<ConstId> {
        FD_SIG.iter().filter(|_| rng.gen_bool(0.4)).map(|k| c(k)).collect()
    };
    let mut lits = Vec::new();
    if !consistent {
        let (x, y, z) = (random_set(rng), random_set(rng), random_set(rng));
        if rng.gen_bool(0.5) {
            lits.push(Literal::pos(atom(&x, &y)));
            lits.push(Literal::pos(atom(&y, &z)));
            lits.push(Literal::neg(atom(&x, &z)));
        } else {
            lits.push(Literal::pos(atom(&x, &y)));
            lits.push(Literal::pos(atom(&x, &z)));
            lits.push(Literal::neg(atom(&x, &y.union(&z).cloned().collect())));
        }
    }
    for _ in 0..rng.gen_range(1..=5) {
        let (x, y) = (random_set(rng), random_set(rng));
        let l = atom(&x, &y);
        lits.push(if rng.gen_bool(0.6) { Literal::pos(l) } else { Literal::neg(l) });
    }
    lits.shuffle(rng);
    lits
}

fn mask(s: &BTreeSet<ConstId>) -> u8 {
    FD_SIG
        .iter()
        .enumerate()
        .filter(|(_, k)| s.contains(&c(k)))
        .fold(0, |acc, (b, _)| acc | 1 << b)
}

fn conjunction(lits: &[Literal]) -> NormalFormula {
    lits.iter()
        .map(Literal::to_normal)
        .reduce(NormalFormula::and)
        .unwrap_or(NormalFormula::Top)
}

fn criterion_7(report: &mut Report) {
    let mut models = Vec::new();
    for states in 1..=255u8 {
        for actual in 0..8u8 {
            if states >> actual & 1 == 1 {
                models.push(satisfied_fds(states, actual));
            }
        }
    }
    let realizable = |lits: &[Literal]| {
        models.iter().any(|&m| {
            lits.iter().all(|l| {
                let bit = 8 * mask(&l.atom.lhs) + mask(&l.atom.rhs);
                (m >> bit & 1 == 1) == l.positive
            })
        })
    };
    let mut rng = StdRng::seed_from_u64(7);
    let (mut sat_ok, mut unsat_ok) = (0usize, 0usize);
    let mut problems = Vec::new();
    while sat_ok < 600 || unsat_ok < 600 {
        let want = sat_ok <= unsat_ok;
        let lits = single_literal_sets(&mut rng, want);
        let truth = realizable(&lits);
        if !want && truth {
            problems.push(format!("seeded violation realizable: {lits:?}"));
            break;
        }
        if literals_consistent(&lits) != truth {
            problems.push(format!("consistency disagrees with exhaustive search on {lits:?}"));
            break;
        }
        match satisfiable(&conjunction(&lits), DEFAULT_GUARD).unwrap() {
            Some(pm) if truth => {
                if lits.iter().all(|l| holds(&pm, &l.to_normal().to_formula())) {
                    sat_ok += 1;
                } else {
                    problems.push(format!("model fails a literal of {lits:?}"));
                    break;
                }
            }
            None if !truth => unsat_ok += 1,
            other => {
                problems.push(format!("verdict {} on {lits:?}", other.is_some()));
                break;
            }
        }
    }
    let mut multi_ok = 0usize;
    for _ in 0..300 {
        let seeded = rng.gen_bool(0.5);
        let mut lits = single_literal_sets(&mut rng, seeded);
        for l in lits.iter_mut() {
            l.atom.agent = agent(if rng.gen_bool(0.5) { "1" } else { "2" });
        }
        if let Some(pm) = satisfiable(&conjunction(&lits), DEFAULT_GUARD).unwrap() {
            if !lits.iter().all(|l| holds(&pm, &l.to_normal().to_formula())) {
                problems.push(format!("multi-agent model fails a literal of {lits:?}"));
                break;
            }
            multi_ok += 1;
        } else if literals_consistent(&lits) {
            problems.push(format!("consistent multi-agent set reported unsat: {lits:?}"));
            break;
        }
    }
    report.record(
        7,
        problems.is_empty(),
        if problems.is_empty() {
            format!("{sat_ok} consistent and {unsat_ok} inconsistent sets agree with exhaustive search; {multi_ok} multi-agent models verified")
        } else {
            problems.join("; ")
        },
    );
}

/// Evaluates `f` on every pointed model with at most three states and two
/// values over the formula's own constants and agents.
fn valid_on_small_models(p: &Proof) -> Result<usize, String> {
    let f = &p.conclusion;
    let sig: Vec<ConstId> = signature_of(f).into_iter().collect();
    let agents: Vec<AgentId> = match p.mode {
        Mode::Single => vec![AgentId::single()],
        Mode::Multi => {
            let mut a = agents_of(f);
            a.insert(agent("1"));
            a.insert(agent("2"));
            a.into_iter().collect()
        }
    };
    let mut count = 0;
    for states in 1..=3 {
        for m in ModelEnumerator::new(sig.clone(), agents.clone(), states, 2) {
            for pm in pointed(m) {
                count += 1;
                if !holds(&pm, f) {
                    return Err(format!("{f} false at {}", describe(&pm)));
                }
            }
        }
    }
    Ok(count)
}

fn criterion_8(report: &mut Report) {
    let builtins = builtin_derivations();
    let mutations = mutation_corpus();
    let mut problems = Vec::new();
    let mut models = 0;
    for (name, p) in &builtins {
        let verdict = check_proof(p);
        match verdict {
            pil::proofcheck::Verdict::Accepted { ref premises } if premises.is_empty() => {
                match valid_on_small_models(p) {
                    Ok(n) => models += n,
                    Err(why) => problems.push(format!("{name}: {why}")),
                }
            }
            other => problems.push(format!("{name}: {other}")),
        }
    }
    for (name, p) in &mutations {
        if check_proof(p).is_accepted() {
            problems.push(format!("mutation {name} accepted"));
        }
    }
    let enough = mutations.len() >= 20;
    report.record(
        8,
        problems.is_empty() && enough,
        if problems.is_empty() {
            format!(
                "{} builtins accepted and valid on {models} pointed models; {} mutations rejected",
                builtins.len(),
                mutations.len()
            )
        } else {
            problems.join("; ")
        },
    );
}

#[test]
fn acceptance() {
    let mut report = Report { lines: Vec::new() };
    let sweep = Sweep::new();
    criterion_1(&mut report, &sweep);
    criterion_2(&mut report, &sweep);
    criterion_3(&mut report);
    criterion_4(&mut report);
    criterion_5(&mut report);
    let (single, multi) = criterion_6(&mut report, &sweep);
    criterion_7(&mut report);
    criterion_8(&mut report);

    // Criterion 6 is expected to report FAIL: in multi mode the relational
    // bisimulation is strictly finer than logical equivalence. Everything
    // else must pass, and the multi-mode discrepancy must be one-sided.
    for (n, pass, detail) in &report.lines {
        if *n != 6 {
            assert!(*pass, "criterion {n} failed: {detail}");
        }
    }
    assert!(single.witnesses.is_empty() && single.unsound == 0);
    assert_eq!(multi.unsound, 0, "bisimilar models must be equivalent");
    assert!(multi.pointwise_agrees, "pointwise check must match equivalence");
}
