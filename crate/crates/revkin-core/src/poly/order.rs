//! Monomial orders: lex, degrevlex, and block (product) orders.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::{Monomial, PolyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// One block of a product order: a set of universe variables compared with
/// its own elementary order. Earlier blocks are more significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderBlock {
    pub kind: OrderKind,
    pub vars: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    Block(Vec<OrderBlock>),
}

fn cmp_lex<'a, I: Iterator<Item = (&'a u32, &'a u32)>>(pairs: I) -> Ordering {
    for (a, b) in pairs {
        match a.cmp(b) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn cmp_degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    // ties broken on the last variable where exponents differ:
    // smaller exponent there means the larger monomial
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Strict total order. The first universe variable is the most
    /// significant one for both elementary orders.
    pub fn compare(&self, m1: &Monomial, m2: &Monomial) -> Ordering {
        debug_assert_eq!(m1.len(), m2.len());
        match self {
            MonomialOrder::Lex => cmp_lex(m1.exps().iter().zip(m2.exps())),
            MonomialOrder::DegRevLex => cmp_degrevlex(m1.exps(), m2.exps()),
            MonomialOrder::Block(blocks) => {
                for b in blocks {
                    let a: Vec<u32> = b.vars.iter().map(|&v| m1.exp(v)).collect();
                    let c: Vec<u32> = b.vars.iter().map(|&v| m2.exp(v)).collect();
                    let ord = match b.kind {
                        OrderKind::Lex => cmp_lex(a.iter().zip(c.iter())),
                        OrderKind::DegRevLex => cmp_degrevlex(&a, &c),
                    };
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Checks that a block order partitions `[0, n)` exactly once.
    pub fn validate(&self, n: usize) -> Result<(), PolyError> {
        if let MonomialOrder::Block(blocks) = self {
            let mut seen = alloc::vec![false; n];
            for b in blocks {
                for &v in &b.vars {
                    if v >= n {
                        return Err(PolyError::InvalidOrder(format!("variable index {v} out of range")));
                    }
                    if seen[v] {
                        return Err(PolyError::InvalidOrder(format!("variable index {v} covered twice")));
                    }
                    seen[v] = true;
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(PolyError::InvalidOrder("block partition does not cover the universe".into()));
            }
        }
        Ok(())
    }

    /// Elimination (product) order: the dropped variables form the leading
    /// block, so basis elements free of them generate the elimination ideal.
    pub fn elimination(drop: &[usize], keep: &[usize], keep_kind: OrderKind) -> MonomialOrder {
        MonomialOrder::Block(alloc::vec![
            OrderBlock { kind: OrderKind::DegRevLex, vars: drop.to_vec() },
            OrderBlock { kind: keep_kind, vars: keep.to_vec() },
        ])
    }
}
