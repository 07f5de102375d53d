//! CPLEX LP text export.

use std::fmt::Write;

use crate::model::{LinearModel, VarId, VarKind};

const WRAP_AT: usize = 100;

impl LinearModel {
    /// Renders the model in LP format: `Minimize`, `Subject To`, `Bounds`
    /// (only when continuous variables exist), `Binary`, `End`.
    pub fn to_lp(&self) -> String {
        let mut out = String::new();
        out.push_str("Minimize\n");
        let objective: Vec<(VarId, i64)> = self
            .variables()
            .iter()
            .enumerate()
            .filter(|(_, v)| v.objective != 0)
            .map(|(i, v)| (VarId(i), v.objective))
            .collect();
        self.write_row(&mut out, "obj", &objective, "");

        out.push_str("Subject To\n");
        for (i, (c, _)) in self.constraints().enumerate() {
            let name = c.name.clone().unwrap_or_else(|| format!("c{}", i + 1));
            let tail = format!(" {} {}", c.sense.symbol(), c.rhs);
            self.write_row(&mut out, &name, &c.terms, &tail);
        }

        let continuous: Vec<&str> = self
            .variables()
            .iter()
            .filter(|v| v.kind == VarKind::Continuous)
            .map(|v| v.name.as_str())
            .collect();
        if !continuous.is_empty() {
            out.push_str("Bounds\n");
            for name in continuous {
                let _ = writeln!(out, " {name} >= 0");
            }
        }

        let binaries: Vec<&str> = self
            .variables()
            .iter()
            .filter(|v| v.kind == VarKind::Binary)
            .map(|v| v.name.as_str())
            .collect();
        if !binaries.is_empty() {
            out.push_str("Binary\n");
            for name in binaries {
                let _ = writeln!(out, " {name}");
            }
        }
        out.push_str("End\n");
        out
    }

    fn write_row(&self, out: &mut String, name: &str, terms: &[(VarId, i64)], tail: &str) {
        let mut tokens: Vec<String> = Vec::with_capacity(terms.len() + 1);
        for (k, &(v, c)) in terms.iter().enumerate() {
            let var = &self.variable(v).name;
            let sign = if c < 0 { "-" } else { "+" };
            let mag = c.abs();
            let body = if mag == 1 { var.clone() } else { format!("{mag} {var}") };
            tokens.push(match (k, c < 0) {
                (0, false) => body,
                (0, true) => format!("- {body}"),
                _ => format!("{sign} {body}"),
            });
        }
        if tokens.is_empty() {
            match self.variables().first() {
                Some(v) => tokens.push(format!("0 {}", v.name)),
                None => tokens.push("0".to_string()),
            }
        }
        let mut line = format!(" {name}:");
        for t in tokens {
            if line.len() + t.len() + 1 > WRAP_AT {
                out.push_str(&line);
                out.push('\n');
                line = String::from("   ");
            }
            line.push(' ');
            line.push_str(&t);
        }
        out.push_str(&line);
        out.push_str(tail);
        out.push('\n');
    }
}

#[cfg(test)]
mod tests {
    use crate::model::{Constraint, Group, LinearModel, Sense};

    #[test]
    fn sections_in_order() {
        let mut m = LinearModel::new();
        let x = m.add_binary("x_1_2", 1).unwrap();
        m.add_constraints([Constraint::new(vec![(x, 1)], Sense::Ge, 1)], &Group::new("g")).unwrap();
        let text = m.to_lp();
        let pos = |s: &str| text.find(s).unwrap();
        assert!(pos("Minimize") < pos("Subject To"));
        assert!(pos("Subject To") < pos("Binary"));
        assert!(pos("Binary") < pos("End"));
        assert!(!text.contains("Bounds"));
        assert_eq!(
            text,
            "Minimize\n obj: x_1_2\nSubject To\n c1: x_1_2 >= 1\nBinary\n x_1_2\nEnd\n"
        );
    }

    #[test]
    fn signs_coefficients_and_bounds() {
        let mut m = LinearModel::new();
        let x = m.add_binary("x_1_2", 1).unwrap();
        let f = m.add_continuous("f_S0_1_2", 0).unwrap();
        let g = m.add_continuous("f_S0_2_1", 0).unwrap();
        m.add_constraints(
            [Constraint::new(vec![(f, 1), (g, 1), (x, -1)], Sense::Le, 0).named("cap_S0_1_2")],
            &Group::new("g"),
        )
        .unwrap();
        let text = m.to_lp();
        assert!(text.contains(" cap_S0_1_2: - x_1_2 + f_S0_1_2 + f_S0_2_1 <= 0\n"), "{text}");
        assert!(text.contains("Bounds\n f_S0_1_2 >= 0\n f_S0_2_1 >= 0\nBinary\n x_1_2\nEnd\n"));
    }

    #[test]
    fn long_rows_wrap() {
        let mut m = LinearModel::new();
        let ids: Vec<_> = (0..60).map(|i| m.add_binary(format!("x_{i}_{}", i + 1), 1).unwrap()).collect();
        m.add_constraints([Constraint::new(ids.iter().map(|&v| (v, 1)).collect(), Sense::Ge, 3)], &Group::new("g"))
            .unwrap();
        let text = m.to_lp();
        assert!(text.lines().all(|l| l.len() <= 120));
        assert_eq!(text, m.to_lp());
    }
}
