use std::fmt;

use super::{Formula, Kind};

const IFF: u8 = 1;
const IMPLIES: u8 = 2;
const JOIN: u8 = 3;
const MEET: u8 = 4;
const SUM: u8 = 5;
const ODOT: u8 = 6;
const UNARY: u8 = 7;
const ATOM: u8 = 8;

fn precedence(kind: &Kind) -> u8 {
    match kind {
        Kind::Iff(..) => IFF,
        Kind::Implies(..) => IMPLIES,
        Kind::Join(..) => JOIN,
        Kind::Meet(..) => MEET,
        Kind::Oplus(..) | Kind::Ominus(..) => SUM,
        Kind::Odot(..) => ODOT,
        Kind::Neg(_) | Kind::Nabla(..) | Kind::Delta(..) => UNARY,
        Kind::Var(_) | Kind::Const(_) => ATOM,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, g: &Formula, min: u8) -> fmt::Result {
    if precedence(g.kind()) < min {
        f.write_str("(")?;
        write_formula(f, g)?;
        f.write_str(")")
    } else {
        write_formula(f, g)
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, g: &Formula) -> fmt::Result {
    let binary = |f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula, p: u8, right_assoc: bool| {
        let (lmin, rmin) = if right_assoc { (p + 1, p) } else { (p, p + 1) };
        write_at(f, a, lmin)?;
        write!(f, " {op} ")?;
        write_at(f, b, rmin)
    };
    match g.kind() {
        Kind::Var(i) => write!(f, "v{i}"),
        Kind::Const(r) => write!(f, "C[{r}]"),
        Kind::Neg(a) => {
            f.write_str("!")?;
            write_at(f, a, UNARY)
        }
        Kind::Delta(r, a) => {
            write!(f, "D[{r}] ")?;
            write_at(f, a, UNARY)
        }
        Kind::Nabla(r, a) => {
            write!(f, "N[{r}] ")?;
            write_at(f, a, UNARY)
        }
        Kind::Iff(a, b) => binary(f, a, "<->", b, IFF, false),
        Kind::Implies(a, b) => binary(f, a, "->", b, IMPLIES, true),
        Kind::Join(a, b) => binary(f, a, "\\/", b, JOIN, false),
        Kind::Meet(a, b) => binary(f, a, "/\\", b, MEET, false),
        Kind::Oplus(a, b) => binary(f, a, "(+)", b, SUM, false),
        Kind::Ominus(a, b) => binary(f, a, "(-)", b, SUM, false),
        Kind::Odot(a, b) => binary(f, a, "(.)", b, ODOT, false),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use proptest::prelude::*;

    #[test]
    fn examples_round_trip() {
        for s in ["v1 -> v1", "D[1/2] v1", "!v1 (+) v2", "v1 (-) C[1/2]", "C[1/2] (-) v1"] {
            assert_eq!(parse(s).unwrap().to_string(), s);
        }
    }

    #[test]
    fn parentheses_only_where_needed() {
        let cases = [
            ("(v1 -> v2) -> v3", "(v1 -> v2) -> v3"),
            ("v1 -> (v2 -> v3)", "v1 -> v2 -> v3"),
            ("(v1 (+) v2) (-) v3", "v1 (+) v2 (-) v3"),
            ("v1 (+) (v2 (-) v3)", "v1 (+) (v2 (-) v3)"),
            ("!(v1 (.) v2)", "!(v1 (.) v2)"),
            ("N[1/2](v1->v2) <-> (N[1/2]v1 -> N[1/2]v2)", "N[1/2] (v1 -> v2) <-> N[1/2] v1 -> N[1/2] v2"),
        ];
        for (input, printed) in cases {
            assert_eq!(parse(input).unwrap().to_string(), printed);
        }
    }

    fn formula_text() -> impl Strategy<Value = String> {
        let leaf =
            prop_oneof![(1usize..4).prop_map(|i| format!("v{i}")), (0i64..=4).prop_map(|n| format!("C[{n}/4]")),];
        leaf.prop_recursive(5, 40, 2, |inner| {
            let ops = prop::sample::select(vec!["->", "<->", "\\/", "/\\", "(+)", "(-)", "(.)"]);
            prop_oneof![
                inner.clone().prop_map(|a| format!("!{a}")),
                (inner.clone(), 0i64..=3).prop_map(|(a, n)| format!("D[{n}/3]({a})")),
                (inner.clone(), 0i64..=3).prop_map(|(a, n)| format!("N[{n}/3]({a})")),
                (inner.clone(), ops, inner).prop_map(|(a, op, b)| format!("({a}) {op} ({b})")),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(text in formula_text()) {
            let f = parse(&text).unwrap();
            let printed = f.to_string();
            prop_assert_eq!(parse(&printed).unwrap(), f);
        }
    }
}
