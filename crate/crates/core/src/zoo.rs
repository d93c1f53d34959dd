//! Built-in quantales and the quantale spec-file format.
//!
//! Spec files are line oriented:
//!
//! ```text
//! # the three-chain
//! quantale C3
//! elements bot k top
//! unit k
//! leq bot k
//! leq k top
//! mult bot bot bot
//! mult bot k bot
//! ...
//! ```
//!
//! `leq a b` lines generate the order (reflexive-transitive closure).
//! Alternatively the order can be given by a total join table with
//! `join a b c` lines (meaning `a v b = c`); the two forms cannot be mixed.
//! `mult a b c` means `a & b = c`; the commutative closure is applied and
//! every other product must be listed. `#` starts a comment.
//!
//! The finite chains `lukasiewicz(n)`, `godel(n)` and `lawvere(n)` are finite
//! stand-ins for t-norms on `[0, 1]` and for `[0, inf]`; they are not the
//! continuous quantales themselves.

use std::path::Path;

use crate::error::{Error, Result};
use crate::quantale::{
    classification, AnyQuantale, ChainQuantale, Classification, FiniteQuantale, OrderSpec, QuantaleSpec,
};

/// A built-in quantale together with the classification it is known to have.
#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: String,
    pub quantale: FiniteQuantale,
    pub expected: Classification,
}

impl ZooEntry {
    /// Whether the computed classification matches the expected one.
    pub fn check(&self) -> std::result::Result<(), (Classification, Classification)> {
        let got = classification(&self.quantale);
        if got == self.expected {
            Ok(())
        } else {
            Err((self.expected, got))
        }
    }
}

const fn class(integral: bool, divisible: bool, lean: bool, weakly_lean: bool) -> Classification {
    Classification {
        integral,
        divisible,
        lean,
        weakly_lean,
    }
}

fn owned(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn generated(
    name: &str,
    elements: &[&str],
    unit: &str,
    leq: &[(&str, &str)],
    products: &[(&str, &str, &str)],
) -> FiniteQuantale {
    QuantaleSpec {
        name: name.to_string(),
        elements: owned(elements),
        unit: unit.to_string(),
        order: OrderSpec::Leq(leq.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()),
        products: products
            .iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect(),
    }
    .build_completed()
    .unwrap_or_else(|e| panic!("built-in quantale {name} is invalid: {e}"))
}

/// Builds a quantale whose carrier is `labels` with order and product given
/// by index functions.
fn tabulated(
    name: &str,
    labels: Vec<String>,
    unit: usize,
    leq: impl Fn(usize, usize) -> bool,
    mult: impl Fn(usize, usize) -> usize,
) -> FiniteQuantale {
    let n = labels.len();
    let mut pairs = Vec::new();
    let mut products = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && leq(a, b) {
                pairs.push((labels[a].clone(), labels[b].clone()));
            }
            if a <= b {
                products.push((labels[a].clone(), labels[b].clone(), labels[mult(a, b)].clone()));
            }
        }
    }
    QuantaleSpec {
        name: name.to_string(),
        unit: labels[unit].clone(),
        elements: labels,
        order: OrderSpec::Leq(pairs),
        products,
    }
    .build()
    .unwrap_or_else(|e| panic!("built-in quantale {name} is invalid: {e}"))
}

/// The three-chain `bot < k < top` with `top & top = top`.
pub fn c3() -> FiniteQuantale {
    generated(
        "C3",
        &["bot", "k", "top"],
        "k",
        &[("bot", "k"), ("k", "top")],
        &[("top", "top", "top")],
    )
}

/// The four-element frame `bot < p, q < top`.
pub fn f1() -> FiniteQuantale {
    generated(
        "F1",
        &["bot", "p", "q", "top"],
        "top",
        &[("bot", "p"), ("bot", "q"), ("p", "top"), ("q", "top")],
        &[("p", "p", "p"), ("q", "q", "q"), ("p", "q", "bot")],
    )
}

/// The five-element frame `bot < p, q < r < top`.
pub fn f2() -> FiniteQuantale {
    generated(
        "F2",
        &["bot", "p", "q", "r", "top"],
        "top",
        &[("bot", "p"), ("bot", "q"), ("p", "r"), ("q", "r"), ("r", "top")],
        &[("p", "p", "p"), ("q", "q", "q"), ("p", "q", "bot")],
    )
}

const DIAMOND: [&str; 5] = ["bot", "k", "a", "b", "top"];
const DIAMOND_ORDER: [(&str, &str); 6] = [
    ("bot", "k"),
    ("bot", "a"),
    ("bot", "b"),
    ("k", "top"),
    ("a", "top"),
    ("b", "top"),
];

/// The diamond `M3` with `a & a = b`, `b & b = a`, `a & b = k`,
/// `a & top = b & top = top`.
pub fn m3() -> FiniteQuantale {
    generated(
        "M3",
        &DIAMOND,
        "k",
        &DIAMOND_ORDER,
        &[
            ("a", "a", "b"),
            ("b", "b", "a"),
            ("a", "b", "k"),
            ("a", "top", "top"),
            ("b", "top", "top"),
        ],
    )
}

/// The diamond with every product of `a`, `b`, `top` equal to `top`.
pub fn m3_prime() -> FiniteQuantale {
    generated(
        "M3prime",
        &DIAMOND,
        "k",
        &DIAMOND_ORDER,
        &[
            ("a", "a", "top"),
            ("a", "b", "top"),
            ("b", "b", "top"),
            ("a", "top", "top"),
            ("b", "top", "top"),
        ],
    )
}

fn subset_label(mask: usize, names: &[String]) -> String {
    let members: Vec<&str> = (0..names.len())
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| names[i].as_str())
        .collect();
    format!("{{{}}}", members.join(","))
}

/// The powerset frame of `{a, b, c, ...}` (`n` letters), ordered by inclusion
/// with `&` = intersection. Elements are listed by bitmask.
pub fn powerset(n: usize) -> Result<FiniteQuantale> {
    if !(1..=4).contains(&n) {
        return Err(Error::UnknownName(format!("powerset({n}): size must be 1..=4")));
    }
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let labels = (0..1usize << n).map(|m| subset_label(m, &names)).collect();
    Ok(tabulated(
        &format!("powerset({n})"),
        labels,
        (1 << n) - 1,
        |a, b| a & b == a,
        |a, b| a & b,
    ))
}

/// The free quantale on the cyclic group `Z_n`: subsets of `{0..n-1}` under
/// inclusion with `A & B = {a + b mod n}` and unit `{0}`.
pub fn free_cyclic(n: usize) -> Result<FiniteQuantale> {
    if !(1..=4).contains(&n) {
        return Err(Error::UnknownName(format!("free-Z({n}): order must be 1..=4")));
    }
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let labels = (0..1usize << n).map(|m| subset_label(m, &names)).collect();
    let sum = move |a: usize, b: usize| {
        let mut out = 0;
        for i in 0..n {
            for j in 0..n {
                if a >> i & 1 == 1 && b >> j & 1 == 1 {
                    out |= 1 << ((i + j) % n);
                }
            }
        }
        out
    };
    let name = if n == 2 { "free-Z2".to_string() } else { format!("free-Z({n})") };
    Ok(tabulated(&name, labels, 1, |a, b| a & b == a, sum))
}

pub fn free_z2() -> FiniteQuantale {
    free_cyclic(2).expect("n = 2 is in range")
}

fn fraction(i: usize, n: usize) -> String {
    if i == 0 {
        return "0".into();
    }
    if i == n {
        return "1".into();
    }
    let (mut a, mut b) = (i, n);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    format!("{}/{}", i / a, n / a)
}

fn chain_check(n: usize, what: &str) -> Result<()> {
    if (1..=16).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnknownName(format!("{what}({n}): n must be 1..=16")))
    }
}

/// The Łukasiewicz chain `{0, 1/n, ..., 1}` with `a & b = max(0, a + b - 1)`.
pub fn lukasiewicz(n: usize) -> Result<FiniteQuantale> {
    chain_check(n, "lukasiewicz")?;
    Ok(tabulated(
        &format!("lukasiewicz({n})"),
        (0..=n).map(|i| fraction(i, n)).collect(),
        n,
        |a, b| a <= b,
        |a, b| (a + b).saturating_sub(n),
    ))
}

/// The Gödel chain `{0, 1/n, ..., 1}` with `a & b = min(a, b)`.
pub fn godel(n: usize) -> Result<FiniteQuantale> {
    chain_check(n, "godel")?;
    Ok(tabulated(
        &format!("godel({n})"),
        (0..=n).map(|i| fraction(i, n)).collect(),
        n,
        |a, b| a <= b,
        |a, b| a.min(b),
    ))
}

/// `{0, 1, ..., n, inf}` ordered by `>=` with addition truncated to `inf`
/// above `n`.
pub fn lawvere(n: usize) -> Result<FiniteQuantale> {
    chain_check(n, "lawvere")?;
    let mut labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    labels.push("inf".into());
    let inf = n + 1;
    Ok(tabulated(
        &format!("lawvere({n})"),
        labels,
        0,
        |a, b| a >= b,
        |a, b| if a == inf || b == inf || a + b > n { inf } else { a + b },
    ))
}

/// The two-element Boolean quantale `{0 < 1}`.
pub fn boolean() -> FiniteQuantale {
    godel(1).expect("n = 1 is in range").renamed("boolean")
}

fn parse_param(name: &str, prefix: &str) -> Option<Result<usize>> {
    let rest = name.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(
        rest.trim()
            .parse::<usize>()
            .map_err(|_| Error::UnknownName(name.to_string())),
    )
}

/// Looks up a built-in quantale by name.
///
/// Known names: `C3`, `F1`, `F2`, `M3`, `M3prime`, `powerset(n)` (n <= 4),
/// `free-Z2`, `free-Z(n)` (n <= 4), `lukasiewicz(n)`, `godel(n)`,
/// `lawvere(n)`, `lawvere-chain` (= `lawvere(3)`), `boolean`.
/// Matching ignores ASCII case.
pub fn builtin(name: &str) -> Result<ZooEntry> {
    let lower = name.trim().to_ascii_lowercase();
    let entry = |quantale: FiniteQuantale, expected: Classification| ZooEntry {
        name: quantale_name(&quantale),
        quantale,
        expected,
    };
    Ok(match lower.as_str() {
        "c3" => entry(c3(), class(false, false, true, true)),
        "f1" => entry(f1(), class(true, true, false, true)),
        "f2" => entry(f2(), class(true, true, true, true)),
        "m3" => entry(m3(), class(false, false, false, false)),
        "m3prime" | "m3'" | "m3′" => entry(m3_prime(), class(false, false, true, true)),
        "free-z2" => entry(free_z2(), class(false, false, false, true)),
        "boolean" => entry(boolean(), class(true, true, true, true)),
        "lawvere-chain" => entry(lawvere(3)?, class(true, true, true, true)),
        _ => {
            if let Some(n) = parse_param(&lower, "powerset") {
                let n = n?;
                entry(powerset(n)?, class(true, true, n == 1, true))
            } else if let Some(n) = parse_param(&lower, "free-z") {
                let n = n?;
                // lean iff k is the only invertible element, weakly lean iff
                // no two distinct elements multiply to k
                entry(free_cyclic(n)?, class(n == 1, n == 1, n == 1, n <= 2))
            } else if let Some(n) = parse_param(&lower, "lukasiewicz") {
                entry(lukasiewicz(n?)?, class(true, true, true, true))
            } else if let Some(n) = parse_param(&lower, "godel") {
                entry(godel(n?)?, class(true, true, true, true))
            } else if let Some(n) = parse_param(&lower, "lawvere") {
                entry(lawvere(n?)?, class(true, true, true, true))
            } else {
                return Err(Error::UnknownName(name.to_string()));
            }
        }
    })
}

fn quantale_name(q: &FiniteQuantale) -> String {
    use crate::quantale::Quantale;
    q.name().to_string()
}

/// The standard instances used by the exhaustive checks.
pub fn catalog() -> Vec<ZooEntry> {
    [
        "C3",
        "F1",
        "F2",
        "M3",
        "M3prime",
        "powerset(1)",
        "powerset(2)",
        "powerset(3)",
        "powerset(4)",
        "free-Z2",
        "free-Z(3)",
        "boolean",
        "lukasiewicz(2)",
        "lukasiewicz(3)",
        "lukasiewicz(4)",
        "godel(2)",
        "godel(3)",
        "godel(4)",
        "lawvere-chain",
    ]
    .iter()
    .map(|n| builtin(n).expect("catalog names are built in"))
    .collect()
}

/// Parses a quantale spec file and validates it.
pub fn parse_spec(text: &str) -> Result<FiniteQuantale> {
    let spec = parse_spec_tables(text)?;
    spec.build()
}

/// Parses a spec file into its tables without validating the axioms.
pub fn parse_spec_tables(text: &str) -> Result<QuantaleSpec> {
    let mut name = None;
    let mut elements: Option<(usize, Vec<String>)> = None;
    let mut unit: Option<(usize, String)> = None;
    let mut leq = Vec::new();
    let mut joins = Vec::new();
    let mut products = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |message: String| Error::Syntax {
            line: line_no,
            message,
        };
        let mut words = line.split_whitespace();
        let keyword = words.next().expect("line is non-empty");
        let args: Vec<&str> = words.collect();
        let check_known = |labels: &[&str]| -> Result<()> {
            let Some((_, els)) = &elements else {
                return Err(syntax(format!("`{keyword}` before `elements`")));
            };
            for l in labels {
                if !els.iter().any(|e| e == l) {
                    return Err(syntax(format!("unknown element `{l}`")));
                }
            }
            Ok(())
        };
        match (keyword, args.len()) {
            ("quantale", 1) => {
                if name.is_some() {
                    return Err(syntax("duplicate `quantale` line".into()));
                }
                name = Some(args[0].to_string());
            }
            ("elements", n) if n > 0 => {
                if elements.is_some() {
                    return Err(syntax("duplicate `elements` line".into()));
                }
                for (j, e) in args.iter().enumerate() {
                    if args[..j].contains(e) {
                        return Err(syntax(format!("duplicate element `{e}`")));
                    }
                }
                elements = Some((line_no, owned(&args)));
            }
            ("unit", 1) => {
                check_known(&args)?;
                if unit.is_some() {
                    return Err(syntax("duplicate `unit` line".into()));
                }
                unit = Some((line_no, args[0].to_string()));
            }
            ("leq", 2) => {
                check_known(&args)?;
                leq.push((args[0].to_string(), args[1].to_string()));
            }
            ("join", 3) => {
                check_known(&args)?;
                joins.push((line_no, args[0].to_string(), args[1].to_string(), args[2].to_string()));
            }
            ("mult", 3) => {
                check_known(&args)?;
                products.push((args[0].to_string(), args[1].to_string(), args[2].to_string()));
            }
            ("quantale" | "elements" | "unit" | "leq" | "join" | "mult", n) => {
                return Err(syntax(format!("`{keyword}` does not take {n} arguments")));
            }
            _ => return Err(syntax(format!("unknown directive `{keyword}`"))),
        }
    }

    let eof = |message: &str| Error::Syntax {
        line: last_line,
        message: message.to_string(),
    };
    let name = name.ok_or_else(|| eof("missing `quantale <name>` line"))?;
    let (_, elements) = elements.ok_or_else(|| eof("missing `elements` line"))?;
    let (_, unit) = unit.ok_or_else(|| eof("missing `unit` line"))?;
    let order = if joins.is_empty() {
        OrderSpec::Leq(leq)
    } else {
        if !leq.is_empty() {
            return Err(Error::Syntax {
                line: joins[0].0,
                message: "`join` and `leq` lines cannot be mixed".into(),
            });
        }
        let n = elements.len();
        let pos = |s: &str| elements.iter().position(|e| e == s).expect("checked above");
        let mut table: Vec<Vec<Option<String>>> = vec![vec![None; n]; n];
        for (line, a, b, c) in &joins {
            for (x, y) in [(pos(a), pos(b)), (pos(b), pos(a))] {
                match &table[x][y] {
                    Some(prev) if prev != c => {
                        return Err(Error::Syntax {
                            line: *line,
                            message: format!("conflicting join for {a} v {b}"),
                        })
                    }
                    _ => table[x][y] = Some(c.clone()),
                }
            }
        }
        for x in 0..n {
            table[x][x].get_or_insert_with(|| elements[x].clone());
        }
        let mut rows = Vec::with_capacity(n);
        for (x, row) in table.into_iter().enumerate() {
            let mut out = Vec::with_capacity(n);
            for (y, cell) in row.into_iter().enumerate() {
                out.push(cell.ok_or_else(|| {
                    eof(&format!("missing join {} v {}", elements[x], elements[y]))
                })?);
            }
            rows.push(out);
        }
        OrderSpec::Joins(rows)
    };
    Ok(QuantaleSpec {
        name,
        elements,
        unit,
        order,
        products,
    })
}

/// Resolves a `--quantale` argument: built-in names first, then a spec file.
pub fn resolve(name_or_path: &str) -> Result<FiniteQuantale> {
    match builtin(name_or_path) {
        Ok(entry) => Ok(entry.quantale),
        Err(Error::UnknownName(_)) if Path::new(name_or_path).is_file() => {
            parse_spec(&std::fs::read_to_string(name_or_path)?)
        }
        Err(e) => Err(e),
    }
}

/// Like [`resolve`], but also accepts `extended-chain` (the integers with
/// `+-inf` under `>=` and `+`) and `lawvere` (its non-negative part).
pub fn resolve_any(name_or_path: &str) -> Result<AnyQuantale> {
    match name_or_path.trim().to_ascii_lowercase().as_str() {
        "extended-chain" => Ok(AnyQuantale::Chain(ChainQuantale::Extended)),
        "lawvere" => Ok(AnyQuantale::Chain(ChainQuantale::NonNegative)),
        _ => resolve(name_or_path).map(AnyQuantale::Finite),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::Quantale;

    #[test]
    fn m3_products_from_generators() {
        let q = m3();
        let e = |s| q.element(s).unwrap();
        assert_eq!(q.mult(e("a"), e("a")), e("b"));
        assert_eq!(q.mult(e("b"), e("b")), e("a"));
        assert_eq!(q.mult(e("a"), e("b")), e("k"));
        assert_eq!(q.mult(e("top"), e("top")), e("top"));
        assert_eq!(q.mult(e("k"), e("top")), e("top"));
        // a & (a v b) = (a & a) v (a & b) = b v k = top
        assert_eq!(q.mult(e("a"), q.join(e("a"), e("b"))), e("top"));
    }

    #[test]
    fn m3_residuum_a_to_b() {
        let q = m3();
        let e = |s| q.element(s).unwrap();
        // oracle: join of {r : a & r <= b}
        let oracle = q.join_all(q.elements().filter(|&r| q.leq(q.mult(e("a"), r), e("b"))));
        assert_eq!(oracle, e("a"));
        assert_eq!(q.residuum(e("a"), e("b")), e("a"));
    }

    #[test]
    fn free_z2_table() {
        let q = free_z2();
        assert_eq!(q.labels(), ["{}", "{0}", "{1}", "{0,1}"]);
        let e = |s| q.element(s).unwrap();
        assert_eq!(q.unit(), e("{0}"));
        assert_eq!(q.mult(e("{1}"), e("{1}")), e("{0}"));
        assert_eq!(q.mult(e("{1}"), e("{0,1}")), e("{0,1}"));
    }

    #[test]
    fn powerset_one_is_boolean() {
        let q = powerset(1).unwrap();
        assert_eq!(q.size(), 2);
        assert_eq!(q.unit(), q.top());
    }

    #[test]
    fn builtin_lookup() {
        assert_eq!(builtin("m3").unwrap().quantale, m3());
        assert_eq!(builtin("M3'").unwrap().quantale, m3_prime());
        assert!(matches!(builtin("nope"), Err(Error::UnknownName(_))));
        assert!(matches!(builtin("powerset(9)"), Err(Error::UnknownName(_))));
        assert!(matches!(builtin("powerset(x)"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn spec_round_trip_c3() {
        let q = c3();
        let text = q.to_spec_string();
        let back = parse_spec(&text).unwrap();
        assert_eq!(back, q);
        assert_eq!(back.name(), "C3");
        assert_eq!(back.labels(), q.labels());
    }

    #[test]
    fn commutative_closure_in_spec_files() {
        let text = "\
quantale C3
elements bot k top
unit k
leq bot k
leq k top
mult bot bot bot
mult k bot bot      # only one orientation listed
mult top bot bot
mult k k k
mult top k top
mult top top top
";
        assert_eq!(parse_spec(text).unwrap(), c3());
    }

    #[test]
    fn unit_at_bottom_is_trivial() {
        let text = "quantale T\nelements bot top\nunit bot\nleq bot top\nmult bot bot bot\nmult bot top bot\nmult top top top\n";
        assert!(matches!(parse_spec(text), Err(Error::TrivialQuantale)));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let text = "quantale X\nelements a b\nunit a\nleq a c\n";
        match parse_spec(text) {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        match parse_spec("quantale X\nfoo\n") {
            Err(Error::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_spec("# nothing\n"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn join_table_form() {
        let text = "\
quantale C3
elements bot k top
unit k
join bot k k
join bot top top
join k top top
mult top top top
mult bot bot bot
mult bot k bot
mult bot top bot
mult k k k
mult k top top
";
        assert_eq!(parse_spec(text).unwrap(), c3());
    }
}
