//! Named variable spaces.
//!
//! Every polyhedron in this crate is stated over an ordered list of variables,
//! each tagged with a class label (the modeling role it plays) and an index
//! tuple. Class labels are what independence, projection targets, and
//! column-redundancy talk about.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// A single named variable: class label plus index tuple, e.g. `x[1,3]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable {
    pub class: String,
    pub index: Vec<usize>,
}

impl Variable {
    pub fn new(class: impl Into<String>, index: Vec<usize>) -> Self {
        Self { class: class.into(), index }
    }
}

impl std::fmt::Display for Variable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.class)?;
        if !self.index.is_empty() {
            write!(f, "[")?;
            for (i, k) in self.index.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{k}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// An ordered, duplicate-free list of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSpace {
    vars: Vec<Variable>,
}

impl VarSpace {
    pub fn new(vars: Vec<Variable>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vars {
            if !seen.insert((v.class.clone(), v.index.clone())) {
                return Err(Error::DuplicateVariable(v.to_string()));
            }
        }
        Ok(Self { vars })
    }

    /// `label[1] .. label[count]`, the common flat one-class space.
    pub fn flat(label: &str, count: usize) -> Self {
        Self { vars: (1..=count).map(|i| Variable::new(label, vec![i])).collect() }
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    /// Class labels in first-appearance order.
    pub fn classes(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for v in &self.vars {
            if !out.contains(&v.class.as_str()) {
                out.push(&v.class);
            }
        }
        out
    }

    pub fn class_set(&self) -> BTreeSet<&str> {
        self.vars.iter().map(|v| v.class.as_str()).collect()
    }

    pub fn has_class(&self, label: &str) -> bool {
        self.vars.iter().any(|v| v.class == label)
    }

    /// Column indices of every variable in any of the given classes,
    /// in space order.
    pub fn columns_of_classes(&self, labels: &[&str]) -> Result<Vec<usize>> {
        for l in labels {
            if !self.has_class(l) {
                return Err(Error::UnknownClass((*l).to_string()));
            }
        }
        Ok(self
            .vars
            .iter()
            .enumerate()
            .filter(|(_, v)| labels.contains(&v.class.as_str()))
            .map(|(i, _)| i)
            .collect())
    }

    pub fn position(&self, var: &Variable) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// The sub-space of the variables at the given columns, keeping order.
    pub fn select(&self, columns: &[usize]) -> Self {
        Self { vars: columns.iter().map(|&i| self.vars[i].clone()).collect() }
    }

    /// Concatenation; errors if the two spaces share a variable.
    pub fn concat(&self, other: &VarSpace) -> Result<Self> {
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        Self::new(vars)
    }
}
