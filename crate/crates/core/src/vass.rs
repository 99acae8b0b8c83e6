//! Vector addition systems with states, as finite automata over Z².

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::vector::Vector;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge<T = i64> {
    pub from: usize,
    pub letter: Vector<T>,
    pub to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vass<T = i64> {
    states: Vec<String>,
    edges: Vec<Edge<T>>,
    initial: BTreeSet<usize>,
    accepting: BTreeSet<usize>,
    outgoing: Vec<Vec<usize>>,
}

impl<T: Scalar> Vass<T> {
    pub fn new(
        states: Vec<String>,
        edges: Vec<Edge<T>>,
        initial: BTreeSet<usize>,
        accepting: BTreeSet<usize>,
    ) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, name) in states.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::Precondition(format!("state {name} declared twice")));
            }
        }
        let n = states.len();
        for q in initial.iter().chain(&accepting) {
            if *q >= n {
                return Err(Error::Precondition(format!("state index {q} out of range")));
            }
        }
        let mut outgoing = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.from >= n || e.to >= n {
                return Err(Error::Precondition(format!("edge {i} refers to an undeclared state")));
            }
            outgoing[e.from].push(i);
        }
        Ok(Self { states, edges, initial, accepting, outgoing })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn outgoing(&self, q: usize) -> impl Iterator<Item = &Edge<T>> + '_ {
        self.outgoing[q].iter().map(move |&i| &self.edges[i])
    }

    /// The letters labelling some edge.
    pub fn alphabet(&self) -> BTreeSet<Vector<T>> {
        self.edges.iter().map(|e| e.letter.clone()).collect()
    }

    /// `‖A‖`, zero when there are no edges.
    pub fn alphabet_norm(&self) -> Result<T> {
        let mut best = T::zero();
        for e in &self.edges {
            best = best.max(e.letter.norm()?);
        }
        Ok(best)
    }

    /// Whether `trace` is an accepting state sequence reading `letters`.
    pub fn accepts(&self, letters: &[Vector<T>], trace: &[usize]) -> bool {
        if trace.len() != letters.len() + 1 {
            return false;
        }
        if !self.initial.contains(&trace[0]) || !self.accepting.contains(&trace[trace.len() - 1]) {
            return false;
        }
        letters.iter().enumerate().all(|(i, letter)| {
            trace[i] < self.states.len()
                && self.outgoing(trace[i]).any(|e| &e.letter == letter && e.to == trace[i + 1])
        })
    }
}
