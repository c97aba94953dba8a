//! Derivations of the standard derived schemas at small fixed arities, and
//! corrupted variants of them.

use crate::syntax::{AgentId, ConstId, Formula, Mode};

use super::{Proof, ProofLine, Rule};

/// Appends justified lines and hands back their 1-based indices.
///
/// The helpers compute the formula each rule produces, so a derivation only
/// states the formulas that are not determined by earlier lines.
#[derive(Debug, Clone)]
pub struct ProofBuilder {
    mode: Mode,
    lines: Vec<ProofLine>,
}

impl ProofBuilder {
    pub fn new(mode: Mode) -> Self {
        ProofBuilder {
            mode,
            lines: Vec::new(),
        }
    }

    pub fn formula(&self, line: usize) -> &Formula {
        &self.lines[line - 1].formula
    }

    pub fn push(&mut self, formula: Formula, rule: Rule) -> usize {
        self.lines.push(ProofLine { formula, rule });
        self.lines.len()
    }

    pub fn premise(&mut self, f: Formula) -> usize {
        self.push(f, Rule::Premise)
    }

    pub fn axiom(&mut self, f: Formula, rule: Rule) -> usize {
        self.push(f, rule)
    }

    /// `ψ` from `φ` on line `i` and `φ -> ψ` on line `j`.
    ///
    /// # Panics
    /// If line `j` is not an implication.
    pub fn mp(&mut self, i: usize, j: usize) -> usize {
        let (_, consequent) = self
            .formula(j)
            .as_implication()
            .expect("major premise is an implication");
        let consequent = consequent.clone();
        self.push(consequent, Rule::Mp(i, j))
    }

    pub fn nec(&mut self, c: &ConstId, i: usize) -> usize {
        let f = Formula::inspect(c.clone(), self.formula(i).clone());
        self.push(f, Rule::Nec(c.clone(), i))
    }

    /// `goal` from the given lines: a tautology `l1 -> (l2 -> ... -> goal)`
    /// followed by one modus ponens per line.
    pub fn by_taut(&mut self, from: &[usize], goal: Formula) -> usize {
        let taut = from
            .iter()
            .rev()
            .fold(goal, |acc, &l| Formula::implies(self.formula(l).clone(), acc));
        let mut cur = self.push(taut, Rule::Taut);
        for &l in from {
            cur = self.mp(l, cur);
        }
        cur
    }

    /// `[c]φ -> [c]ψ` from a theorem `φ -> ψ` on line `i`, by NEC and DIST.
    pub fn k_lift(&mut self, c: &ConstId, i: usize) -> usize {
        let (phi, psi) = self.formula(i).as_implication().expect("implication");
        let dist = dist(c, phi.clone(), psi.clone());
        let boxed = self.nec(c, i);
        let d = self.axiom(dist, Rule::Dist);
        self.mp(boxed, d)
    }

    /// `[C]φ -> [C]ψ` from a theorem `φ -> ψ`, lifting innermost first.
    pub fn k_lift_all(&mut self, cs: &[ConstId], i: usize) -> usize {
        cs.iter().rev().fold(i, |line, c| self.k_lift(c, line))
    }

    /// `[C](φ -> ψ) -> ([C]φ -> [C]ψ)` for a prefix list `C`.
    pub fn multi_dist(&mut self, cs: &[ConstId], phi: &Formula, psi: &Formula) -> usize {
        let Some((last, outer)) = cs.split_last() else {
            let f = Formula::implies(
                Formula::implies(phi.clone(), psi.clone()),
                Formula::implies(phi.clone(), psi.clone()),
            );
            return self.push(f, Rule::Taut);
        };
        let base = self.axiom(dist(last, phi.clone(), psi.clone()), Rule::Dist);
        let mut cur = base;
        let mut inner = vec![last.clone()];
        for c in outer.iter().rev() {
            // cur: [C'](φ -> ψ) -> ([C']φ -> [C']ψ) for the inner prefix C'.
            let lifted = self.k_lift(c, cur);
            inner.insert(0, c.clone());
            let a = Formula::inspect_all(&inner[1..], phi.clone());
            let b = Formula::inspect_all(&inner[1..], psi.clone());
            let step = self.axiom(dist(c, a, b), Rule::Dist);
            let goal = Formula::implies(
                Formula::inspect_all(&inner, Formula::implies(phi.clone(), psi.clone())),
                Formula::implies(
                    Formula::inspect_all(&inner, phi.clone()),
                    Formula::inspect_all(&inner, psi.clone()),
                ),
            );
            cur = self.by_taut(&[lifted, step], goal);
        }
        cur
    }

    /// `[C](φ & ψ)` from `[C]φ` on line `i` and `[C]ψ` on line `j`.
    pub fn multi_box_conj(&mut self, cs: &[ConstId], i: usize, j: usize) -> usize {
        let phi = strip(cs, self.formula(i));
        let psi = strip(cs, self.formula(j));
        let both = Formula::and(phi.clone(), psi.clone());
        let pair = self.push(
            Formula::implies(phi, Formula::implies(psi.clone(), both.clone())),
            Rule::Taut,
        );
        let lifted = self.k_lift_all(cs, pair);
        let partial = self.mp(i, lifted);
        let dist = self.multi_dist(cs, &psi, &both);
        let applied = self.mp(partial, dist);
        self.mp(j, applied)
    }

    pub fn finish(self) -> Proof {
        let conclusion = self.lines.last().map_or(Formula::Top, |l| l.formula.clone());
        Proof {
            mode: self.mode,
            lines: self.lines,
            conclusion,
        }
    }
}

fn strip(cs: &[ConstId], f: &Formula) -> Formula {
    let mut cur = f;
    for c in cs {
        match cur {
            Formula::Inspect(d, body) if d == c => cur = body,
            _ => panic!("formula does not start with the expected prefix"),
        }
    }
    cur.clone()
}

fn dist(c: &ConstId, phi: Formula, psi: Formula) -> Formula {
    Formula::implies(
        Formula::inspect(c.clone(), Formula::implies(phi.clone(), psi.clone())),
        Formula::implies(Formula::inspect(c.clone(), phi), Formula::inspect(c.clone(), psi)),
    )
}

fn c(name: &str) -> ConstId {
    ConstId::new(name).expect("valid constant")
}

fn kv(agent: &AgentId, name: &str) -> Formula {
    Formula::kv(agent.clone(), c(name))
}

fn boxed(name: &str, f: Formula) -> Formula {
    Formula::inspect(c(name), f)
}

fn seriality() -> Proof {
    let mut b = ProofBuilder::new(Mode::Single);
    let top = b.push(Formula::Top, Rule::Taut);
    let nec = b.nec(&c("c"), top);
    let det = b.axiom(
        Formula::implies(boxed("c", Formula::Top), Formula::diamond(c("c"), Formula::Top)),
        Rule::Det,
    );
    b.mp(nec, det);
    b.finish()
}

fn ir_prime() -> Proof {
    let s = AgentId::single();
    let phi = kv(&s, "d");
    let mut b = ProofBuilder::new(Mode::Single);
    let ir = b.axiom(
        Formula::implies(
            kv(&s, "c"),
            Formula::implies(boxed("c", Formula::not(phi.clone())), Formula::not(phi.clone())),
        ),
        Rule::Ir,
    );
    let det = b.axiom(
        Formula::iff(Formula::diamond(c("c"), phi.clone()), boxed("c", phi.clone())),
        Rule::Det,
    );
    let goal = Formula::implies(kv(&s, "c"), Formula::implies(phi.clone(), boxed("c", phi)));
    b.by_taut(&[ir, det], goal);
    b.finish()
}

fn dist_prime() -> Proof {
    let s = AgentId::single();
    let (phi, psi) = (kv(&s, "d"), kv(&s, "e"));
    let both = Formula::and(phi.clone(), psi.clone());
    let cc = c("c");
    let mut b = ProofBuilder::new(Mode::Single);
    let left = b.push(Formula::implies(both.clone(), phi.clone()), Rule::Taut);
    let left = b.k_lift(&cc, left);
    let right = b.push(Formula::implies(both.clone(), psi.clone()), Rule::Taut);
    let right = b.k_lift(&cc, right);
    let pair = b.push(
        Formula::implies(phi.clone(), Formula::implies(psi.clone(), both.clone())),
        Rule::Taut,
    );
    let pair = b.k_lift(&cc, pair);
    let d = b.axiom(dist(&cc, psi.clone(), both.clone()), Rule::Dist);
    let goal = Formula::iff(
        boxed("c", both),
        Formula::and(boxed("c", phi), boxed("c", psi)),
    );
    b.by_taut(&[left, right, pair, d], goal);
    b.finish()
}

fn multi_dist() -> Proof {
    let s = AgentId::single();
    let mut b = ProofBuilder::new(Mode::Single);
    b.multi_dist(&[c("c1"), c("c2")], &kv(&s, "d"), &kv(&s, "e"));
    b.finish()
}

fn multi_dist_prime() -> Proof {
    let s = AgentId::single();
    let cs = [c("c1"), c("c2")];
    let (phi, psi) = (kv(&s, "d"), kv(&s, "e"));
    let both = Formula::and(phi.clone(), psi.clone());
    let mut b = ProofBuilder::new(Mode::Single);
    let left = b.push(Formula::implies(both.clone(), phi.clone()), Rule::Taut);
    let left = b.k_lift_all(&cs, left);
    let right = b.push(Formula::implies(both.clone(), psi.clone()), Rule::Taut);
    let right = b.k_lift_all(&cs, right);
    let pair = b.push(
        Formula::implies(phi.clone(), Formula::implies(psi.clone(), both.clone())),
        Rule::Taut,
    );
    let pair = b.k_lift_all(&cs, pair);
    let d = b.multi_dist(&cs, &psi, &both);
    let goal = Formula::iff(
        Formula::inspect_all(&cs, both),
        Formula::and(Formula::inspect_all(&cs, phi), Formula::inspect_all(&cs, psi)),
    );
    b.by_taut(&[left, right, pair, d], goal);
    b.finish()
}

/// `[c1][c2](Kv_i(c1) & Kv_i(c2))`, also the `C = D` case of projectivity.
fn learn_both(b: &mut ProofBuilder, agent: &AgentId, c1: &ConstId, c2: &ConstId) -> usize {
    let l1 = b.axiom(Formula::inspect(c1.clone(), Formula::kv(agent.clone(), c1.clone())), Rule::Learn);
    let n1 = b.nec(c2, l1);
    let body = Formula::kv(agent.clone(), c1.clone());
    let comm = b.axiom(
        Formula::implies(
            Formula::inspect(c2.clone(), Formula::inspect(c1.clone(), body.clone())),
            Formula::inspect(c1.clone(), Formula::inspect(c2.clone(), body)),
        ),
        Rule::Comm,
    );
    let first = b.mp(n1, comm);
    let l2 = b.axiom(Formula::inspect(c2.clone(), Formula::kv(agent.clone(), c2.clone())), Rule::Learn);
    let second = b.nec(c1, l2);
    b.multi_box_conj(&[c1.clone(), c2.clone()], first, second)
}

fn multi_learn() -> Proof {
    let mut b = ProofBuilder::new(Mode::Single);
    learn_both(&mut b, &AgentId::single(), &c("c1"), &c("c2"));
    b.finish()
}

fn multi_nf() -> Proof {
    let s = AgentId::single();
    let ds = [c("d1"), c("d2")];
    let (k1, k2) = (kv(&s, "c1"), kv(&s, "c2"));
    let mut b = ProofBuilder::new(Mode::Single);
    let keep = |b: &mut ProofBuilder, k: &Formula| {
        let inner = b.axiom(
            Formula::implies(k.clone(), Formula::inspect(ds[1].clone(), k.clone())),
            Rule::Nf,
        );
        let lifted = b.k_lift(&ds[0], inner);
        let outer = b.axiom(
            Formula::implies(k.clone(), Formula::inspect(ds[0].clone(), k.clone())),
            Rule::Nf,
        );
        b.by_taut(
            &[outer, lifted],
            Formula::implies(k.clone(), Formula::inspect_all(&ds, k.clone())),
        )
    };
    let a1 = keep(&mut b, &k1);
    let a2 = keep(&mut b, &k2);
    let both = Formula::and(k1.clone(), k2.clone());
    let pair = b.push(
        Formula::implies(k1.clone(), Formula::implies(k2.clone(), both.clone())),
        Rule::Taut,
    );
    let pair = b.k_lift_all(&ds, pair);
    let d = b.multi_dist(&ds, &k2, &both);
    let goal = Formula::implies(both.clone(), Formula::inspect_all(&ds, both));
    b.by_taut(&[a1, a2, pair, d], goal);
    b.finish()
}

fn multi_ir() -> Proof {
    let s = AgentId::single();
    let phi = kv(&s, "d");
    let (k1, k2) = (kv(&s, "c1"), kv(&s, "c2"));
    let mut b = ProofBuilder::new(Mode::Single);
    let outer = b.axiom(
        Formula::implies(
            k1.clone(),
            Formula::implies(boxed("c1", boxed("c2", phi.clone())), boxed("c2", phi.clone())),
        ),
        Rule::Ir,
    );
    let inner = b.axiom(
        Formula::implies(k2.clone(), Formula::implies(boxed("c2", phi.clone()), phi.clone())),
        Rule::Ir,
    );
    let goal = Formula::implies(
        Formula::and(k1, k2),
        Formula::implies(boxed("c1", boxed("c2", phi.clone())), phi),
    );
    b.by_taut(&[outer, inner], goal);
    b.finish()
}

fn multi_nec() -> Proof {
    let s = AgentId::single();
    let mut b = ProofBuilder::new(Mode::Single);
    let t = b.push(Formula::implies(kv(&s, "d"), kv(&s, "d")), Rule::Taut);
    let inner = b.nec(&c("c2"), t);
    b.nec(&c("c1"), inner);
    b.finish()
}

/// `Kv({c,d,e};{c,e})`, i.e. `[c][d][e](Kv(c) & Kv(e))`.
fn projectivity() -> Proof {
    let s = AgentId::single();
    let mut b = ProofBuilder::new(Mode::Single);
    let ce = learn_both(&mut b, &s, &c("c"), &c("e"));
    let with_d = b.nec(&c("d"), ce);
    let body = Formula::inspect(c("e"), Formula::and(kv(&s, "c"), kv(&s, "e")));
    let comm = b.axiom(
        Formula::implies(
            boxed("d", boxed("c", body.clone())),
            boxed("c", boxed("d", body)),
        ),
        Rule::Comm,
    );
    b.mp(with_d, comm);
    b.finish()
}

/// `[c]Kv_i(d) -> ([d]Kv_i(e) -> [c]Kv_i(e))`, with IR in single mode and
/// RIR otherwise.
fn transitivity(mode: Mode, agent: &AgentId) -> Proof {
    let (cc, dd) = (c("c"), c("d"));
    let (kd, ke) = (kv(agent, "d"), kv(agent, "e"));
    let mut b = ProofBuilder::new(mode);
    let nf = b.axiom(Formula::implies(ke.clone(), boxed("c", ke.clone())), Rule::Nf);
    let lifted = b.k_lift(&dd, nf);
    let comm = b.axiom(
        Formula::implies(boxed("d", boxed("c", ke.clone())), boxed("c", boxed("d", ke.clone()))),
        Rule::Comm,
    );
    let left = b.by_taut(
        &[lifted, comm],
        Formula::implies(boxed("d", ke.clone()), boxed("c", boxed("d", ke.clone()))),
    );
    let ir_rule = if mode == Mode::Single { Rule::Ir } else { Rule::Rir };
    let ir = b.axiom(
        Formula::implies(kd.clone(), Formula::implies(boxed("d", ke.clone()), ke.clone())),
        ir_rule,
    );
    let lifted = b.k_lift(&cc, ir);
    let d = b.axiom(dist(&cc, boxed("d", ke.clone()), ke.clone()), Rule::Dist);
    let right = b.by_taut(
        &[lifted, d],
        Formula::implies(
            boxed("c", kd.clone()),
            Formula::implies(boxed("c", boxed("d", ke.clone())), boxed("c", ke.clone())),
        ),
    );
    let goal = Formula::implies(
        boxed("c", kd),
        Formula::implies(boxed("d", ke.clone()), boxed("c", ke)),
    );
    b.by_taut(&[left, right], goal);
    b.finish()
}

/// `Kv(c;d) & Kv(c;e) -> Kv(c;d,e)`.
fn additivity() -> Proof {
    let s = AgentId::single();
    let (kd, ke) = (kv(&s, "d"), kv(&s, "e"));
    let both = Formula::and(kd.clone(), ke.clone());
    let cc = c("c");
    let mut b = ProofBuilder::new(Mode::Single);
    let pair = b.push(
        Formula::implies(kd.clone(), Formula::implies(ke.clone(), both.clone())),
        Rule::Taut,
    );
    let pair = b.k_lift(&cc, pair);
    let d = b.axiom(dist(&cc, ke.clone(), both.clone()), Rule::Dist);
    let goal = Formula::implies(
        Formula::and(boxed("c", kd), boxed("c", ke)),
        boxed("c", both),
    );
    b.by_taut(&[pair, d], goal);
    b.finish()
}

/// Named derivations, each accepted by the checker.
pub fn builtin_derivations() -> Vec<(String, Proof)> {
    let one = AgentId::new("1").expect("valid agent");
    vec![
        ("seriality(c)".into(), seriality()),
        ("IR'(c,d)".into(), ir_prime()),
        ("DIST'(c)".into(), dist_prime()),
        ("multi-DIST(c1,c2)".into(), multi_dist()),
        ("multi-DIST'(c1,c2)".into(), multi_dist_prime()),
        ("multi-LEARN(c1,c2)".into(), multi_learn()),
        ("multi-NF(c1,c2;d1,d2)".into(), multi_nf()),
        ("multi-IR(c1,c2)".into(), multi_ir()),
        ("multi-NEC(c1,c2)".into(), multi_nec()),
        ("projectivity(c,d,e)".into(), projectivity()),
        ("transitivity(c,d,e)".into(), transitivity(Mode::Single, &AgentId::single())),
        ("transitivity_1(c,d,e)".into(), transitivity(Mode::Multi, &one)),
        ("additivity(c;d,e)".into(), additivity()),
    ]
}

fn find(p: &Proof, pred: impl Fn(&ProofLine) -> bool) -> usize {
    p.lines.iter().position(pred).expect("fixture has such a line")
}

fn named(name: &str) -> Proof {
    builtin_derivations()
        .into_iter()
        .find(|(n, _)| n == name)
        .map(|(_, p)| p)
        .expect("known fixture")
}

fn mutate(name: &str, change: impl FnOnce(&mut Proof)) -> Proof {
    let mut p = named(name);
    change(&mut p);
    p
}

/// Corrupted proofs, each of which the checker must reject.
pub fn mutation_corpus() -> Vec<(String, Proof)> {
    let s = AgentId::single();
    let one = AgentId::new("1").expect("valid agent");
    let two = AgentId::new("2").expect("valid agent");
    let mut out: Vec<(String, Proof)> = Vec::new();
    let mut add = |name: &str, p: Proof| out.push((name.to_string(), p));

    add("IR' with swapped MP operands", mutate("IR'(c,d)", |p| {
        let k = find(p, |l| matches!(l.rule, Rule::Mp(..)));
        if let Rule::Mp(i, j) = p.lines[k].rule {
            p.lines[k].rule = Rule::Mp(j, i);
        }
    }));
    add("IR' with a non-tautology", mutate("IR'(c,d)", |p| {
        let k = find(p, |l| l.rule == Rule::Taut);
        p.lines[k].formula = Formula::implies(p.lines[1].formula.clone(), p.lines[0].formula.clone());
    }));
    add("IR' citing DET for IR", mutate("IR'(c,d)", |p| p.lines[0].rule = Rule::Det));
    add("seriality with NEC on the wrong constant", mutate("seriality(c)", |p| {
        p.lines[1].rule = Rule::Nec(c("d"), 1);
    }));
    add("seriality with a reversed modality", mutate("seriality(c)", |p| {
        p.lines[2].formula = Formula::implies(
            Formula::diamond(c("c"), Formula::Top),
            Formula::inspect(c("c"), Formula::not(Formula::Top)),
        );
    }));
    add("seriality with a forward reference", mutate("seriality(c)", |p| {
        p.lines[3].rule = Rule::Mp(2, 4);
    }));
    add("seriality with a reference to line 0", mutate("seriality(c)", |p| {
        p.lines[3].rule = Rule::Mp(0, 3);
    }));
    add("multi-LEARN with LEARN on the wrong constant", mutate("multi-LEARN(c1,c2)", |p| {
        let k = find(p, |l| l.rule == Rule::Learn);
        p.lines[k].formula = Formula::inspect(c("c1"), kv(&s, "c2"));
    }));
    add("multi-LEARN with COMM changing the body", mutate("multi-LEARN(c1,c2)", |p| {
        let k = find(p, |l| l.rule == Rule::Comm);
        p.lines[k].formula = Formula::implies(
            boxed("c2", boxed("c1", kv(&s, "c1"))),
            boxed("c1", boxed("c2", kv(&s, "c2"))),
        );
    }));
    add("multi-NF with NF reversed", mutate("multi-NF(c1,c2;d1,d2)", |p| {
        let k = find(p, |l| l.rule == Rule::Nf);
        let (a, b) = {
            let (a, b) = p.lines[k].formula.as_implication().expect("implication");
            (a.clone(), b.clone())
        };
        p.lines[k].formula = Formula::implies(b, a);
    }));
    add("multi-DIST with a broken DIST instance", mutate("multi-DIST(c1,c2)", |p| {
        let k = find(p, |l| l.rule == Rule::Dist);
        p.lines[k].formula = Formula::implies(
            boxed("c2", Formula::implies(kv(&s, "d"), kv(&s, "e"))),
            Formula::implies(boxed("c1", kv(&s, "d")), boxed("c2", kv(&s, "e"))),
        );
    }));
    add("transitivity proved with IR in multi mode", {
        let mut p = transitivity(Mode::Multi, &one);
        let k = find(&p, |l| l.rule == Rule::Rir);
        p.lines[k].rule = Rule::Ir;
        p
    });
    add("transitivity whose RIR mentions another agent", {
        let mut b = ProofBuilder::new(Mode::Multi);
        b.axiom(
            Formula::implies(
                Formula::kv(one.clone(), c("c")),
                Formula::implies(
                    boxed("c", Formula::kv(two.clone(), c("d"))),
                    Formula::kv(two.clone(), c("d")),
                ),
            ),
            Rule::Rir,
        );
        b.finish()
    });
    add("NEC on a premise", {
        let mut b = ProofBuilder::new(Mode::Single);
        let p = b.premise(kv(&s, "c"));
        b.nec(&c("d"), p);
        b.finish()
    });
    add("NEC on a consequence of a premise", {
        let mut b = ProofBuilder::new(Mode::Single);
        let p = b.premise(kv(&s, "c"));
        let t = b.push(Formula::implies(kv(&s, "c"), Formula::or(kv(&s, "c"), kv(&s, "d"))), Rule::Taut);
        let m = b.mp(p, t);
        b.nec(&c("e"), m);
        b.finish()
    });
    add("conclusion differs from the last line", mutate("additivity(c;d,e)", |p| {
        p.conclusion = Formula::inspect(c("c"), kv(&s, "d"));
    }));
    add("empty proof", Proof {
        mode: Mode::Single,
        lines: Vec::new(),
        conclusion: Formula::Top,
    });
    add("projectivity with a dropped line", mutate("projectivity(c,d,e)", |p| {
        p.lines.remove(1);
    }));
    add("additivity with DIST on the wrong constant", mutate("additivity(c;d,e)", |p| {
        let k = find(p, |l| l.rule == Rule::Dist);
        let both = Formula::and(kv(&s, "d"), kv(&s, "e"));
        p.lines[k].formula = dist(&c("d"), kv(&s, "e"), both);
    }));
    add("DIST'(c) with DET cited for a TAUT line", mutate("DIST'(c)", |p| {
        p.lines[0].rule = Rule::Det;
    }));
    add("multi-NEC citing the wrong line", mutate("multi-NEC(c1,c2)", |p| {
        p.lines[2].rule = Rule::Nec(c("c1"), 1);
    }));
    add("multi-IR with an unsubscripted line in multi mode", mutate("multi-IR(c1,c2)", |p| {
        p.mode = Mode::Multi;
    }));
    add("single-mode proof with a subscripted agent", mutate("transitivity_1(c,d,e)", |p| {
        p.mode = Mode::Single;
    }));
    add("DET with different bodies", {
        let mut b = ProofBuilder::new(Mode::Single);
        b.axiom(
            Formula::iff(Formula::diamond(c("c"), kv(&s, "d")), boxed("c", kv(&s, "e"))),
            Rule::Det,
        );
        b.finish()
    });
    out
}
