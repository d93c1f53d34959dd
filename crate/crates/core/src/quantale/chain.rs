use std::fmt;

use super::Quantale;

/// An extended integer: `-inf`, a finite value, or `+inf`.
///
/// The derived `Ord` is the numeric order. The quantale order on
/// [`ChainQuantale`] is its reverse.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Ext {
    NegInf,
    Fin(i64),
    PosInf,
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::Fin(v) => write!(f, "{v}"),
            Ext::PosInf => f.write_str("inf"),
        }
    }
}

impl Ext {
    pub fn parse(s: &str) -> Option<Ext> {
        match s {
            "inf" | "+inf" | "∞" | "+∞" => Some(Ext::PosInf),
            "-inf" | "-∞" | "−∞" => Some(Ext::NegInf),
            _ => s.parse::<i64>().ok().map(Ext::Fin),
        }
    }
}

/// The extended integers `[-inf, inf]` ordered by `>=` with addition, or the
/// non-negative part `[0, inf]` (the Lawvere chain).
///
/// Bottom is `inf` and absorbs everything, so `-inf + inf = inf`. Joins are
/// numeric minima and meets numeric maxima. The residuum `p -> q` is the
/// numerically least `r` with `p + r >= q`, clamped at `0` on the
/// non-negative chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainQuantale {
    /// `([-inf, inf], +, 0)`.
    Extended,
    /// `([0, inf], +, 0)`.
    NonNegative,
}

impl ChainQuantale {
    pub fn contains(&self, e: Ext) -> bool {
        match self {
            ChainQuantale::Extended => true,
            ChainQuantale::NonNegative => e >= Ext::Fin(0),
        }
    }
}

fn add(a: Ext, b: Ext) -> Ext {
    match (a, b) {
        (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
        (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
        (Ext::Fin(x), Ext::Fin(y)) => {
            Ext::Fin(x.checked_add(y).expect("extended chain arithmetic overflow"))
        }
    }
}

impl Quantale for ChainQuantale {
    type Elem = Ext;

    fn name(&self) -> &str {
        match self {
            ChainQuantale::Extended => "extended-chain",
            ChainQuantale::NonNegative => "lawvere",
        }
    }

    fn bottom(&self) -> Ext {
        Ext::PosInf
    }

    fn top(&self) -> Ext {
        match self {
            ChainQuantale::Extended => Ext::NegInf,
            ChainQuantale::NonNegative => Ext::Fin(0),
        }
    }

    fn unit(&self) -> Ext {
        Ext::Fin(0)
    }

    fn leq(&self, a: Ext, b: Ext) -> bool {
        a >= b
    }

    fn join(&self, a: Ext, b: Ext) -> Ext {
        a.min(b)
    }

    fn meet(&self, a: Ext, b: Ext) -> Ext {
        a.max(b)
    }

    fn mult(&self, a: Ext, b: Ext) -> Ext {
        add(a, b)
    }

    fn residuum(&self, p: Ext, q: Ext) -> Ext {
        let r = match (p, q) {
            (Ext::PosInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            (Ext::NegInf, _) => Ext::PosInf,
            (Ext::Fin(_), Ext::PosInf) => Ext::PosInf,
            (Ext::Fin(x), Ext::Fin(y)) => {
                Ext::Fin(y.checked_sub(x).expect("extended chain arithmetic overflow"))
            }
        };
        match self {
            ChainQuantale::Extended => r,
            ChainQuantale::NonNegative => r.max(Ext::Fin(0)),
        }
    }

    fn label(&self, a: Ext) -> String {
        a.to_string()
    }

    fn parse_element(&self, s: &str) -> Option<Ext> {
        Ext::parse(s).filter(|&e| self.contains(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::check_laws;

    fn sample(extra: &[i64]) -> Vec<Ext> {
        let mut v = vec![Ext::NegInf, Ext::PosInf];
        v.extend(extra.iter().map(|&x| Ext::Fin(x)));
        v
    }

    #[test]
    fn laws_hold_on_a_sample() {
        let s = sample(&[-3, -1, 0, 1, 2, 5]);
        check_laws(&ChainQuantale::Extended, &s).unwrap();
        let nn: Vec<Ext> = s.into_iter().filter(|&e| e >= Ext::Fin(0)).collect();
        check_laws(&ChainQuantale::NonNegative, &nn).unwrap();
    }

    #[test]
    fn residuum_by_infimum_oracle() {
        // p -> q = the numerically least r in the sample window with p + r >= q.
        let q = ChainQuantale::Extended;
        for p in -4..=4 {
            for t in -4..=4 {
                let oracle = (-20..=20)
                    .find(|&r| p + r >= t)
                    .map(Ext::Fin)
                    .unwrap();
                assert_eq!(q.residuum(Ext::Fin(p), Ext::Fin(t)), oracle);
            }
        }
        assert_eq!(q.residuum(Ext::Fin(3), Ext::Fin(1)), Ext::Fin(-2));
        assert_eq!(ChainQuantale::NonNegative.residuum(Ext::Fin(3), Ext::Fin(1)), Ext::Fin(0));
    }

    #[test]
    fn infinity_conventions() {
        let q = ChainQuantale::Extended;
        assert_eq!(q.mult(Ext::NegInf, Ext::PosInf), Ext::PosInf);
        assert_eq!(q.residuum(Ext::PosInf, Ext::Fin(7)), q.top());
        assert_eq!(q.residuum(Ext::NegInf, Ext::Fin(7)), q.bottom());
        assert_eq!(q.residuum(Ext::Fin(2), Ext::PosInf), Ext::PosInf);
        assert!(q.leq(Ext::PosInf, Ext::Fin(0)));
        assert_eq!(q.join(Ext::Fin(1), Ext::Fin(-1)), Ext::Fin(-1));
    }

    #[test]
    fn parse_rejects_out_of_carrier() {
        assert_eq!(ChainQuantale::NonNegative.parse_element("-1"), None);
        assert_eq!(ChainQuantale::Extended.parse_element("-1"), Some(Ext::Fin(-1)));
        assert_eq!(ChainQuantale::Extended.parse_element("∞"), Some(Ext::PosInf));
    }
}
