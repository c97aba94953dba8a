use super::Formula;

// Binding strength, loosest first.
const IMPLIES: u8 = 0;
const OR: u8 = 1;
const AND: u8 = 2;
const UNARY: u8 = 3;

/// Renders `f` in the concrete syntax accepted by [`super::parse_formula`].
///
/// Implications, disjunctions and diamonds are recovered from their
/// desugared shapes, so `parse_formula(&print_formula(f), mode) == f`.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write(f, IMPLIES, &mut out);
    out
}

/// `~(~a & ~b)` reads as `a | b`, except that `a` shaped like `p & ~q` reads
/// better as `(p -> q) -> b`.
fn disjunction(f: &Formula) -> Option<(&Formula, &Formula)> {
    let (a, b) = f.as_disjunction()?;
    match a {
        Formula::And(_, q) if matches!(q.as_ref(), Formula::Not(_)) => None,
        _ => Some((a, b)),
    }
}

fn level(f: &Formula) -> u8 {
    if f.as_diamond().is_some() {
        UNARY
    } else if disjunction(f).is_some() {
        OR
    } else if f.as_implication().is_some() {
        IMPLIES
    } else {
        match f {
            Formula::And(..) => AND,
            _ => UNARY,
        }
    }
}

fn write(f: &Formula, min: u8, out: &mut String) {
    let own = level(f);
    if own < min {
        out.push('(');
        write(f, IMPLIES, out);
        out.push(')');
        return;
    }
    if let Some((c, body)) = f.as_diamond() {
        out.push('<');
        out.push_str(c.as_str());
        out.push('>');
        write(body, UNARY, out);
    } else if let Some((a, b)) = disjunction(f) {
        write(a, OR, out);
        out.push_str(" | ");
        write(b, AND, out);
    } else if let Some((a, b)) = f.as_implication() {
        write(a, OR, out);
        out.push_str(" -> ");
        write(b, IMPLIES, out);
    } else {
        match f {
            Formula::Top => out.push('T'),
            Formula::Not(g) => {
                out.push('~');
                write(g, UNARY, out);
            }
            Formula::And(a, b) => {
                write(a, AND, out);
                out.push_str(" & ");
                write(b, UNARY, out);
            }
            Formula::Kv(i, c) => {
                out.push_str("Kv");
                if !i.is_single() {
                    out.push('_');
                    out.push_str(i.as_str());
                }
                out.push('(');
                out.push_str(c.as_str());
                out.push(')');
            }
            Formula::Inspect(c, g) => {
                out.push('[');
                out.push_str(c.as_str());
                out.push(']');
                write(g, UNARY, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_formula, AgentId, ConstId, Mode};
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn learn_and_top() {
        let c = ConstId::new("c").unwrap();
        let learn = Formula::inspect(c.clone(), Formula::kv(AgentId::single(), c));
        assert_eq!(print_formula(&learn), "[c]Kv(c)");
        assert_eq!(print_formula(&Formula::Top), "T");
    }

    #[test]
    fn sugar_is_recovered() {
        for text in [
            "Kv(c) -> [c]Kv(d)",
            "Kv(c) | Kv(d) | Kv(e)",
            "(Kv(c) -> Kv(d)) -> Kv(e)",
            "Kv(c) -> Kv(d) -> Kv(e)",
            "<c>T",
            "~(Kv(c) & Kv(d))",
            "[c](Kv(d) | Kv(e))",
            "Kv(c) & (Kv(d) & Kv(e))",
            "Kv(c) & Kv(d) & Kv(e)",
            "~~Kv(c)",
        ] {
            let f = parse_formula(text, Mode::Single).unwrap();
            assert_eq!(print_formula(&f), text);
        }
    }

    #[test]
    fn multi_agent_subscripts() {
        let f = parse_formula("Kv_1(c,e;f)", Mode::Multi).unwrap();
        assert_eq!(print_formula(&f), "[c][e]Kv_1(f)");
        let again = parse_formula(&print_formula(&f), Mode::Multi).unwrap();
        assert_eq!(again, f);
    }

    fn arb_formula(agents: &'static [&'static str]) -> impl Strategy<Value = Formula> {
        let consts = prop::sample::select(vec!["c", "d", "e"]);
        let agent = prop::sample::select(agents.to_vec());
        let leaf = prop_oneof![
            Just(Formula::Top),
            (agent, consts.clone()).prop_map(|(i, c)| {
                let i = if i == "*" { AgentId::single() } else { AgentId::new(i).unwrap() };
                Formula::kv(i, ConstId::new(c).unwrap())
            }),
        ];
        leaf.prop_recursive(5, 48, 2, move |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (consts.clone(), inner.clone())
                    .prop_map(|(c, f)| Formula::inspect(ConstId::new(c).unwrap(), f)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (consts.clone(), inner)
                    .prop_map(|(c, f)| Formula::diamond(ConstId::new(c).unwrap(), f)),
            ]
        })
    }

    proptest! {
        #[test]
        fn round_trip_single(f in arb_formula(&["*"])) {
            let text = print_formula(&f);
            prop_assert_eq!(parse_formula(&text, Mode::Single).unwrap(), f);
        }

        #[test]
        fn round_trip_multi(f in arb_formula(&["1", "2", "alice"])) {
            let text = print_formula(&f);
            prop_assert_eq!(parse_formula(&text, Mode::Multi).unwrap(), f);
        }
    }
}
