//! Classification predicates for finite quantales.
//!
//! The weakly-lean condition quantifies over arbitrary families
//! `(p_i, q_i)`. On a finite carrier it is decided by searching finite sets of
//! distinct pairs, using two reductions that preserve counterexamples:
//!
//! * pairs with `p & q = bot` can be dropped (they leave the hypothesis join
//!   unchanged and only shrink the conclusion join), and a repeated pair would
//!   need `p & q = bot` by the cross condition, so families are sets;
//! * every remaining pair can be lowered to a pointwise-minimal pair with the
//!   same product. Lowering keeps the cross condition (by monotonicity of
//!   `&`) and the hypothesis join, can only shrink the conclusion join, and
//!   never merges two members of a family (their cross products are `bot`
//!   while their own products are not).
//!
//! The empty family has hypothesis join `bot != k` and never applies.

use serde::Serialize;

use super::{Element, FiniteQuantale, Quantale};
use crate::error::{Error, Result};

/// `k = top`.
pub fn is_integral(q: &FiniteQuantale) -> bool {
    q.unit() == q.top()
}

/// Every `d <= t` factors as `d = p & t`.
pub fn is_divisible(q: &FiniteQuantale) -> bool {
    q.elements().all(|t| {
        q.elements()
            .filter(|&d| q.leq(d, t))
            .all(|d| q.elements().any(|p| q.mult(p, t) == d))
    })
}

/// `(p v q = k and p & q = bot) => (p = k or q = k)` and
/// `p & q = k <=> p = q = k`, for all `p, q`.
pub fn is_lean(q: &FiniteQuantale) -> bool {
    let (bot, k) = (q.bottom(), q.unit());
    q.elements().all(|a| {
        q.elements().all(|b| {
            let split = q.join(a, b) == k && q.mult(a, b) == bot;
            let first = !split || a == k || b == k;
            let second = (q.mult(a, b) == k) == (a == k && b == k);
            first && second
        })
    })
}

/// Outcome of the weakly-lean family search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeaklyLeanSearch {
    /// No violating family exists.
    WeaklyLean,
    /// A violating family of `(p, q)` pairs.
    Violated(Vec<(Element, Element)>),
}

impl WeaklyLeanSearch {
    pub fn holds(&self) -> bool {
        matches!(self, WeaklyLeanSearch::WeaklyLean)
    }
}

pub fn is_weakly_lean(q: &FiniteQuantale) -> bool {
    weakly_lean_search(q, u64::MAX)
        .expect("unbounded search cannot exceed its budget")
        .holds()
}

/// Searches for a family violating the weakly-lean condition, visiting at
/// most `node_cap` candidate families.
pub fn weakly_lean_search(q: &FiniteQuantale, node_cap: u64) -> Result<WeaklyLeanSearch> {
    let (bot, k) = (q.bottom(), q.unit());
    let positive: Vec<(Element, Element)> = q
        .elements()
        .flat_map(|a| q.elements().map(move |b| (a, b)))
        .filter(|&(a, b)| {
            let ab = q.mult(a, b);
            ab != bot && q.leq(ab, k)
        })
        .collect();
    let pairs: Vec<(Element, Element)> = positive
        .iter()
        .copied()
        .filter(|&(a, b)| {
            let ab = q.mult(a, b);
            !positive.iter().any(|&(c, d)| {
                (c, d) != (a, b) && q.leq(c, a) && q.leq(d, b) && q.mult(c, d) == ab
            })
        })
        .collect();
    let n = pairs.len();
    let compatible: Vec<bool> = (0..n * n)
        .map(|ij| {
            let ((p, s), (p2, s2)) = (pairs[ij / n], pairs[ij % n]);
            q.mult(p, s2) == bot && q.mult(p2, s) == bot
        })
        .collect();
    let square: Vec<Element> = pairs
        .iter()
        .map(|&(a, b)| {
            let m = q.meet(a, b);
            q.mult(m, m)
        })
        .collect();

    struct Search<'a> {
        q: &'a FiniteQuantale,
        pairs: &'a [(Element, Element)],
        compatible: &'a [bool],
        square: &'a [Element],
        chosen: Vec<usize>,
        visited: u64,
        cap: u64,
    }

    impl Search<'_> {
        fn run(&mut self, start: usize, hyp: Element, concl: Element) -> Result<Option<Vec<usize>>> {
            let n = self.pairs.len();
            let k = self.q.unit();
            for i in start..n {
                if !self.chosen.iter().all(|&j| self.compatible[i * n + j]) {
                    continue;
                }
                self.visited += 1;
                if self.visited > self.cap {
                    return Err(Error::BudgetExceeded {
                        needed: self.visited as u128,
                        budget: self.cap as u128,
                    });
                }
                let (a, b) = self.pairs[i];
                let h = self.q.join(hyp, self.q.mult(a, b));
                let c = self.q.join(concl, self.square[i]);
                if self.q.leq(k, c) {
                    // every extension satisfies the conclusion too
                    continue;
                }
                self.chosen.push(i);
                if h == k {
                    return Ok(Some(self.chosen.clone()));
                }
                if let Some(found) = self.run(i + 1, h, c)? {
                    return Ok(Some(found));
                }
                self.chosen.pop();
            }
            Ok(None)
        }
    }

    let mut search = Search {
        q,
        pairs: &pairs,
        compatible: &compatible,
        square: &square,
        chosen: Vec::new(),
        visited: 0,
        cap: node_cap,
    };
    Ok(match search.run(0, bot, bot)? {
        Some(idx) => WeaklyLeanSearch::Violated(idx.into_iter().map(|i| pairs[i]).collect()),
        None => WeaklyLeanSearch::WeaklyLean,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub integral: bool,
    pub divisible: bool,
    pub lean: bool,
    pub weakly_lean: bool,
}

pub fn classification(q: &FiniteQuantale) -> Classification {
    Classification {
        integral: is_integral(q),
        divisible: is_divisible(q),
        lean: is_lean(q),
        weakly_lean: is_weakly_lean(q),
    }
}
