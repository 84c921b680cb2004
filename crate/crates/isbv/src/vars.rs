//! Variable sets with block structure.
//!
//! A `VariableSet` is an ordered list of distinct names partitioned into
//! blocks: a base block (affine coordinates on the base, always first when
//! present) and one or more projective blocks. The blocks drive multidegree
//! bookkeeping, block monomial orders, and projective point enumeration.

use std::fmt;
use std::sync::Arc;

use crate::error::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    /// Affine coordinates (base of the family, adjoined parameters, ...).
    Base,
    /// Homogeneous coordinates of one projective factor.
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub name: String,
    pub kind: BlockKind,
    /// Indices into the owning variable set, in declaration order.
    pub indices: Vec<usize>,
}

#[derive(Debug, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
    blocks: Vec<Block>,
}

impl VariableSet {
    /// Builds a variable set from `(block name, kind, variable names)` groups.
    pub fn new(groups: &[(&str, BlockKind, &[&str])]) -> Result<Arc<VariableSet>, AlgebraError> {
        let mut names = Vec::new();
        let mut blocks = Vec::new();
        for (bname, kind, vars) in groups {
            if vars.is_empty() {
                return Err(AlgebraError::InvalidVariableSet(format!(
                    "block `{}` is empty",
                    bname
                )));
            }
            let mut indices = Vec::new();
            for v in *vars {
                if names.iter().any(|n| n == v) {
                    return Err(AlgebraError::InvalidVariableSet(format!(
                        "duplicate variable `{}`",
                        v
                    )));
                }
                indices.push(names.len());
                names.push((*v).to_string());
            }
            blocks.push(Block {
                name: (*bname).to_string(),
                kind: *kind,
                indices,
            });
        }
        if names.is_empty() {
            return Err(AlgebraError::InvalidVariableSet("no variables".into()));
        }
        Ok(Arc::new(VariableSet { names, blocks }))
    }

    /// A single-block base variable set (used for ad-hoc polynomial work).
    pub fn simple(vars: &[&str]) -> Arc<VariableSet> {
        VariableSet::new(&[("vars", BlockKind::Base, vars)]).expect("valid simple set")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, name: &str) -> Result<&Block, AlgebraError> {
        self.blocks
            .iter()
            .find(|b| b.name == name)
            .ok_or_else(|| AlgebraError::UnknownBlock(name.to_string()))
    }

    /// The block containing variable `i`.
    pub fn block_of(&self, i: usize) -> &Block {
        self.blocks
            .iter()
            .find(|b| b.indices.contains(&i))
            .expect("every variable belongs to a block")
    }

    pub fn projective_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks
            .iter()
            .filter(|b| b.kind == BlockKind::Projective)
    }

    pub fn base_indices(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .filter(|b| b.kind == BlockKind::Base)
            .flat_map(|b| b.indices.iter().copied())
            .collect()
    }
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in &self.blocks {
            if !first {
                write!(f, " | ")?;
            }
            first = false;
            let vars: Vec<&str> = b.indices.iter().map(|&i| self.names[i].as_str()).collect();
            write!(f, "{}:{}", b.name, vars.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_empty_blocks() {
        assert!(VariableSet::new(&[("b", BlockKind::Base, &["x", "x"])]).is_err());
        assert!(VariableSet::new(&[("b", BlockKind::Projective, &[])]).is_err());
    }

    #[test]
    fn block_lookup() {
        let vs = VariableSet::new(&[
            ("base", BlockKind::Base, &["s", "t"]),
            ("x", BlockKind::Projective, &["x0", "x1"]),
        ])
        .unwrap();
        assert_eq!(vs.block("x").unwrap().indices, vec![2, 3]);
        assert_eq!(vs.index_of("t"), Some(1));
        assert!(vs.block("y").is_err());
    }
}
