//! LP files for cross-checking with external solvers.

use std::fmt;
use std::str::FromStr;

use mci_core::cga::build_model;
use mci_core::flow::build_flow_model;
use mci_core::{Hypergraph, MciError, Strategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportKind {
    /// The relaxed cut model a strategy starts from.
    CutInitial,
    /// The full flow MILP.
    Flow,
}

impl FromStr for ExportKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cut-initial" => Ok(ExportKind::CutInitial),
            "flow" => Ok(ExportKind::Flow),
            other => Err(format!("unknown model kind `{other}` (expected cut-initial or flow)")),
        }
    }
}

impl fmt::Display for ExportKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportKind::CutInitial => "cut-initial",
            ExportKind::Flow => "flow",
        })
    }
}

/// LP text of the requested model. `strategy` only matters for
/// `CutInitial`.
pub fn export_model(h: &Hypergraph, kind: ExportKind, strategy: Strategy) -> Result<String, MciError> {
    match kind {
        ExportKind::CutInitial => {
            let (model, _, _) = build_model(h, &strategy.initial_cuts(h))?;
            Ok(model.to_lp())
        }
        ExportKind::Flow => Ok(build_flow_model(h)?.model.to_lp()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Hypergraph {
        Hypergraph::new(3, vec![vec![1, 2, 3]]).unwrap()
    }

    fn section<'a>(lp: &'a str, name: &str) -> Vec<&'a str> {
        lp.lines()
            .skip_while(|l| *l != name)
            .skip(1)
            .take_while(|l| l.starts_with(' '))
            .collect()
    }

    #[test]
    fn initial_cut_model_of_triangle() {
        let lp = export_model(&triangle(), ExportKind::CutInitial, Strategy::default()).unwrap();
        assert_eq!(section(&lp, "Subject To").len(), 4);
        assert_eq!(section(&lp, "Binary").len(), 3);
        let plain = export_model(&triangle(), ExportKind::CutInitial, Strategy::from_number(1).unwrap()).unwrap();
        assert_eq!(section(&plain, "Subject To").len(), 1);
    }

    #[test]
    fn flow_model_of_triangle() {
        let lp = export_model(&triangle(), ExportKind::Flow, Strategy::default()).unwrap();
        let binary = section(&lp, "Binary");
        let bounds = section(&lp, "Bounds");
        assert_eq!(binary.len() + bounds.len(), 9);
        assert_eq!(binary.len(), 3);
        assert_eq!(section(&lp, "Subject To").len(), 1 + 2 + 3);
    }

    #[test]
    fn deterministic() {
        for kind in [ExportKind::CutInitial, ExportKind::Flow] {
            let a = export_model(&triangle(), kind, Strategy::default()).unwrap();
            let b = export_model(&triangle(), kind, Strategy::default()).unwrap();
            assert_eq!(a, b);
            assert_eq!(kind.to_string().parse::<ExportKind>().unwrap(), kind);
        }
    }
}
