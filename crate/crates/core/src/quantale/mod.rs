//! Commutative unital quantales.
//!
//! A quantale here is a complete lattice with a commutative monoid
//! multiplication `&` that distributes over all joins, and a unit `k`
//! strictly above bottom. Two backends implement [`Quantale`]:
//!
//! * [`FiniteQuantale`]: an exact table-driven quantale over a finite carrier.
//!   Every law is checked exhaustively when it is built, and the
//!   classification predicates in [`classify`] are available for it.
//! * [`ChainQuantale`]: the extended integers ordered by `>=` with addition,
//!   plus its non-negative part. Only element-level operations are offered;
//!   laws can be checked on a finite sample with [`check_laws`].

mod any;
mod chain;
pub mod classify;
mod finite;

use std::fmt;
use std::hash::Hash;

pub use any::{AnyElem, AnyQuantale};
pub use chain::{ChainQuantale, Ext};
pub use classify::{
    classification, is_divisible, is_integral, is_lean, is_weakly_lean, weakly_lean_search,
    Classification, WeaklyLeanSearch,
};
pub use finite::{build_quantale, Element, FiniteQuantale, OrderSpec, QuantaleSpec};

use crate::error::{Axiom, Error, Result};

/// Element-level interface shared by all quantale backends.
///
/// Values of `Elem` are only meaningful together with the quantale that
/// produced them.
pub trait Quantale: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    type Elem: Copy + Eq + Ord + Hash + fmt::Debug + Send + Sync + 'static;

    fn name(&self) -> &str;
    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn unit(&self) -> Self::Elem;
    fn leq(&self, a: Self::Elem, b: Self::Elem) -> bool;
    fn join(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn meet(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mult(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// `a -> b`, the largest `r` with `a & r <= b`.
    fn residuum(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn label(&self, a: Self::Elem) -> String;
    fn parse_element(&self, s: &str) -> Option<Self::Elem>;

    fn lt(&self, a: Self::Elem, b: Self::Elem) -> bool {
        a != b && self.leq(a, b)
    }

    fn join_all<I: IntoIterator<Item = Self::Elem>>(&self, it: I) -> Self::Elem {
        it.into_iter().fold(self.bottom(), |acc, e| self.join(acc, e))
    }

    fn meet_all<I: IntoIterator<Item = Self::Elem>>(&self, it: I) -> Self::Elem {
        it.into_iter().fold(self.top(), |acc, e| self.meet(acc, e))
    }

    fn is_bottom(&self, a: Self::Elem) -> bool {
        a == self.bottom()
    }
}

fn violation<Q: Quantale>(q: &Q, axiom: Axiom, elems: &[Q::Elem]) -> Error {
    Error::AxiomViolation {
        axiom,
        witness: elems.iter().map(|&e| q.label(e)).collect(),
    }
}

/// Checks every quantale law on all pairs and triples drawn from `sample`.
///
/// For a finite quantale, passing the whole carrier makes this exhaustive:
/// distributivity over binary joins and the empty join implies it for all
/// joins.
pub fn check_laws<Q: Quantale>(q: &Q, sample: &[Q::Elem]) -> Result<()> {
    let (bot, top, k) = (q.bottom(), q.top(), q.unit());
    if !q.lt(bot, k) {
        return Err(Error::TrivialQuantale);
    }
    for &a in sample {
        if !q.leq(bot, a) {
            return Err(violation(q, Axiom::Bottom, &[a]));
        }
        if !q.leq(a, top) {
            return Err(violation(q, Axiom::Top, &[a]));
        }
        if q.join(a, a) != a {
            return Err(violation(q, Axiom::JoinTable, &[a]));
        }
        if q.mult(k, a) != a || q.mult(a, k) != a {
            return Err(violation(q, Axiom::UnitLaw, &[a]));
        }
        if q.mult(a, bot) != bot {
            return Err(violation(q, Axiom::BottomAbsorption, &[a]));
        }
    }
    for &a in sample {
        for &b in sample {
            let j = q.join(a, b);
            if j != q.join(b, a) || !q.leq(a, j) || !q.leq(b, j) || q.leq(a, b) != (j == b) {
                return Err(violation(q, Axiom::JoinTable, &[a, b]));
            }
            let m = q.meet(a, b);
            if !q.leq(m, a) || !q.leq(m, b) {
                return Err(violation(q, Axiom::MeetExists, &[a, b]));
            }
            if q.mult(a, b) != q.mult(b, a) {
                return Err(violation(q, Axiom::Commutativity, &[a, b]));
            }
        }
    }
    for &a in sample {
        for &b in sample {
            let ab = q.mult(a, b);
            for &c in sample {
                if q.join(q.join(a, b), c) != q.join(a, q.join(b, c)) {
                    return Err(violation(q, Axiom::JoinTable, &[a, b, c]));
                }
                if q.leq(c, a) && q.leq(c, b) && !q.leq(c, q.meet(a, b)) {
                    return Err(violation(q, Axiom::MeetExists, &[a, b, c]));
                }
                if q.mult(ab, c) != q.mult(a, q.mult(b, c)) {
                    return Err(violation(q, Axiom::Associativity, &[a, b, c]));
                }
                if q.mult(a, q.join(b, c)) != q.join(ab, q.mult(a, c)) {
                    return Err(violation(q, Axiom::JoinDistributivity, &[a, b, c]));
                }
                if q.leq(ab, c) != q.leq(b, q.residuum(a, c)) {
                    return Err(violation(q, Axiom::Residuation, &[a, b, c]));
                }
            }
        }
    }
    Ok(())
}
