use std::collections::BTreeSet;

use serde::Serialize;

use super::{Environment, Origin, StepId};
use crate::deduction::CircleLabel;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceNode {
    pub step: StepId,
    pub op: String,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

/// Production steps and their input-object dependencies. Node order is
/// step order; every edge points from an earlier node to a later one.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ProductionGraph {
    pub nodes: Vec<TraceNode>,
    /// `(from, to)` node indices: `to` consumes something `from` produced.
    pub edges: Vec<(usize, usize)>,
}

impl ProductionGraph {
    pub(super) fn build(env: &Environment) -> Self {
        let mut graph = ProductionGraph::default();
        let mut node_of_step = Vec::new();
        for step in env.steps() {
            if step.kind.is_production() {
                node_of_step.push(Some(graph.nodes.len()));
                graph.nodes.push(TraceNode {
                    step: step.id,
                    op: step.kind.describe(),
                    inputs: step.inputs.clone(),
                    outputs: step.outputs.clone(),
                });
            } else {
                node_of_step.push(None);
            }
        }
        for (to, node) in graph.nodes.iter().enumerate() {
            let mut sources = BTreeSet::new();
            for input in &node.inputs {
                if let Ok(c) = env.circle(&CircleLabel(input.clone())) {
                    sources.insert(c.step);
                    continue;
                }
                for letter in input.chars().filter(char::is_ascii_uppercase) {
                    if let Some(Origin::Produced(s)) = env.point_origin(letter) {
                        sources.insert(s);
                    }
                }
            }
            for s in sources {
                if let Some(Some(from)) = node_of_step.get(s.0) {
                    if *from != to {
                        graph.edges.push((*from, to));
                    }
                }
            }
        }
        graph
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node indices such that every edge goes forward; equal to step order.
    pub fn topological_order(&self) -> Vec<usize> {
        (0..self.nodes.len()).collect()
    }
}
