use super::{ChainQuantale, Element, Ext, FiniteQuantale, Quantale};

/// Either backend, chosen at run time (used by the command line).
#[derive(Clone, Debug, PartialEq)]
pub enum AnyQuantale {
    Finite(FiniteQuantale),
    Chain(ChainQuantale),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnyElem {
    Finite(Element),
    Chain(Ext),
}

impl AnyQuantale {
    pub fn as_finite(&self) -> Option<&FiniteQuantale> {
        match self {
            AnyQuantale::Finite(q) => Some(q),
            AnyQuantale::Chain(_) => None,
        }
    }
}

fn finite(e: AnyElem) -> Element {
    match e {
        AnyElem::Finite(e) => e,
        AnyElem::Chain(c) => panic!("chain element {c} used with a finite quantale"),
    }
}

fn chain(e: AnyElem) -> Ext {
    match e {
        AnyElem::Chain(c) => c,
        AnyElem::Finite(e) => panic!("finite element {e:?} used with a chain quantale"),
    }
}

macro_rules! dispatch {
    ($self:ident, $q:ident => $fin:expr, $ch:expr) => {
        match $self {
            AnyQuantale::Finite($q) => $fin,
            AnyQuantale::Chain($q) => $ch,
        }
    };
}

macro_rules! binary {
    ($name:ident) => {
        fn $name(&self, a: AnyElem, b: AnyElem) -> AnyElem {
            dispatch!(self, q => AnyElem::Finite(q.$name(finite(a), finite(b))),
                AnyElem::Chain(q.$name(chain(a), chain(b))))
        }
    };
}

macro_rules! constant {
    ($name:ident) => {
        fn $name(&self) -> AnyElem {
            dispatch!(self, q => AnyElem::Finite(q.$name()), AnyElem::Chain(q.$name()))
        }
    };
}

impl Quantale for AnyQuantale {
    type Elem = AnyElem;

    fn name(&self) -> &str {
        dispatch!(self, q => q.name(), q.name())
    }

    constant!(bottom);
    constant!(top);
    constant!(unit);
    binary!(join);
    binary!(meet);
    binary!(mult);
    binary!(residuum);

    fn leq(&self, a: AnyElem, b: AnyElem) -> bool {
        dispatch!(self, q => q.leq(finite(a), finite(b)), q.leq(chain(a), chain(b)))
    }

    fn label(&self, a: AnyElem) -> String {
        dispatch!(self, q => q.label(finite(a)), q.label(chain(a)))
    }

    fn parse_element(&self, s: &str) -> Option<AnyElem> {
        dispatch!(self, q => q.parse_element(s).map(AnyElem::Finite),
            q.parse_element(s).map(AnyElem::Chain))
    }
}
