//! Monomial orders: lex, graded reverse lex, and block orders.
//!
//! Block orders compare block by block, so a block order whose leading block
//! is a set `A` of variables is an elimination order for `A`. A block whose
//! variable list is a single variable compares by that exponent alone, which
//! is how the degree-dominant orders for tangent cone computation are built.

use std::cmp::Ordering;

use crate::error::AlgebraError;
use crate::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimpleOrder {
    Lex,
    GrevLex,
}

impl SimpleOrder {
    fn cmp_on(&self, indices: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            SimpleOrder::Lex => {
                for &i in indices {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            SimpleOrder::GrevLex => {
                let da: u32 = indices.iter().map(|&i| a.exp(i)).sum();
                let db: u32 = indices.iter().map(|&i| b.exp(i)).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // reverse lex tie-break: last variable with differing
                // exponent decides, smaller exponent wins
                for &i in indices.iter().rev() {
                    match a.exp(i).cmp(&b.exp(i)) {
                        Ordering::Equal => continue,
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderBlock {
    pub indices: Vec<usize>,
    pub order: SimpleOrder,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block(Vec<OrderBlock>),
}

impl MonomialOrder {
    /// Elimination order: `drop` dominant, `keep` subordinate, grevlex inside
    /// each block.
    pub fn elimination(drop: Vec<usize>, keep: Vec<usize>) -> MonomialOrder {
        MonomialOrder::Block(vec![
            OrderBlock {
                indices: drop,
                order: SimpleOrder::GrevLex,
            },
            OrderBlock {
                indices: keep,
                order: SimpleOrder::GrevLex,
            },
        ])
    }

    /// Block order from a list of `(indices, order)` pairs.
    pub fn blocks(specs: Vec<(Vec<usize>, SimpleOrder)>) -> MonomialOrder {
        MonomialOrder::Block(
            specs
                .into_iter()
                .map(|(indices, order)| OrderBlock { indices, order })
                .collect(),
        )
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                let all: Vec<usize> = (0..a.len()).collect();
                SimpleOrder::Lex.cmp_on(&all, a, b)
            }
            MonomialOrder::GrevLex => {
                let all: Vec<usize> = (0..a.len()).collect();
                SimpleOrder::GrevLex.cmp_on(&all, a, b)
            }
            MonomialOrder::Block(blocks) => {
                for blk in blocks {
                    match blk.order.cmp_on(&blk.indices, a, b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Checks that a block order partitions `0..nvars`.
    pub fn validate(&self, nvars: usize) -> Result<(), AlgebraError> {
        if let MonomialOrder::Block(blocks) = self {
            let mut seen = vec![false; nvars];
            for blk in blocks {
                for &i in &blk.indices {
                    if i >= nvars {
                        return Err(AlgebraError::InvalidOrder(format!(
                            "block index {} out of range",
                            i
                        )));
                    }
                    if seen[i] {
                        return Err(AlgebraError::InvalidOrder(format!(
                            "variable {} appears in two blocks",
                            i
                        )));
                    }
                    seen[i] = true;
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(AlgebraError::InvalidOrder(
                    "block order does not cover all variables".into(),
                ));
            }
        }
        Ok(())
    }

    /// A stable text key identifying the order (cache keys, reports).
    pub fn key(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".to_string(),
            MonomialOrder::GrevLex => "grevlex".to_string(),
            MonomialOrder::Block(blocks) => {
                let parts: Vec<String> = blocks
                    .iter()
                    .map(|b| {
                        let ord = match b.order {
                            SimpleOrder::Lex => "lex",
                            SimpleOrder::GrevLex => "grevlex",
                        };
                        let idx: Vec<String> = b.indices.iter().map(|i| i.to_string()).collect();
                        format!("{}[{}]", ord, idx.join(","))
                    })
                    .collect();
                format!("block({})", parts.join(";"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn grevlex_standard_examples() {
        let o = MonomialOrder::GrevLex;
        // x^2 > xy > y^2 in two variables
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1]), &m(&[0, 2])), Ordering::Greater);
        // degree dominates
        assert_eq!(o.cmp(&m(&[0, 3]), &m(&[2, 0])), Ordering::Greater);
        // the classical grevlex vs grlex separator: x1*x2^2 vs x0^2*x2
        // (in 3 vars, grevlex puts x0^2*x2 > x1*x2^2... compare by last var)
        assert_eq!(o.cmp(&m(&[2, 0, 1]), &m(&[0, 1, 2])), Ordering::Greater);
    }

    #[test]
    fn lex_order() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates() {
        // drop = {0}, keep = {1, 2}: any monomial with v0 beats any without
        let o = MonomialOrder::elimination(vec![0], vec![1, 2]);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
        o.validate(3).unwrap();
        assert!(o.validate(4).is_err());
    }

    #[test]
    fn one_is_minimal() {
        for o in [
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::elimination(vec![0], vec![1, 2]),
        ] {
            let one = m(&[0, 0, 0]);
            for other in [m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 3])] {
                assert_eq!(o.cmp(&other, &one), Ordering::Greater);
            }
        }
    }
}
