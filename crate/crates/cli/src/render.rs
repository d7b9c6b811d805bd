//! Text and LaTeX renderings of reports and connection forms.

use logconn::criterion;
use logconn::obstruction::ObstructionReport;
use logconn::synth::{CheckResult, VerifyReport};
use logconn::{ConnectionPresentation, Instance, Scalar};

pub fn obstruction_text(rep: &ObstructionReport) -> String {
    let mut out = format!("exists: {}\n", rep.exists);
    for v in &rep.values {
        out.push_str(&format!("  {:<12} {}\n", v.basis, v.value));
    }
    out
}

pub fn obstruction_latex(rep: &ObstructionReport) -> String {
    let mut out = String::from("\\begin{tabular}{lr}\n\\beta & \\tilde\\phi(\\beta) \\\\\n\\hline\n");
    for v in &rep.values {
        out.push_str(&format!("${}$ & ${}$ \\\\\n", latex_label(&v.basis), latex_scalar(&v.value)));
    }
    out.push_str("\\end{tabular}\n");
    out
}

fn latex_label(label: &str) -> String {
    // E12*z^2 -> E_{12} z^{2}
    let (head, tail) = label.split_once('*').unwrap_or((label, ""));
    let mut s = match head.strip_prefix('E') {
        Some(idx) => format!("E_{{{idx}}}"),
        None => head.to_string(),
    };
    if !tail.is_empty() {
        s.push(' ');
        match tail.split_once('^') {
            Some((v, e)) => s.push_str(&format!("{v}^{{{e}}}")),
            None => s.push_str(tail),
        }
    }
    s
}

fn latex_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.to_string()
    } else {
        let sign = if x.is_negative() { "-" } else { "" };
        format!("{sign}\\frac{{{}}}{{{}}}", x.numer().magnitude(), x.denom())
    }
}

pub fn connection_text(conn: &ConnectionPresentation) -> String {
    let r = conn.rank();
    let mut out = format!("bundle: {}\n", conn.st);
    out.push_str("omega0:\n");
    for i in 0..r {
        for j in 0..r {
            out.push_str(&format!("  [{},{}] {}\n", i + 1, j + 1, conn.entry(i, j)));
        }
    }
    out
}

pub fn connection_latex(conn: &ConnectionPresentation) -> String {
    let r = conn.rank();
    let rows: Vec<String> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| conn.entry(i, j).render_latex("z"))
                .collect::<Vec<_>>()
                .join(" & ")
        })
        .collect();
    format!(
        "\\omega_0 = \\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}\n",
        rows.join(" \\\\\n")
    )
}

fn check_text(c: &CheckResult) -> String {
    let mut out = format!("{:?}: {}\n", c.check, if c.passed { "pass" } else { "FAIL" });
    for f in &c.failures {
        let entry = f.entry.map(|(i, j)| format!(" entry [{i},{j}]")).unwrap_or_default();
        let point = f.point.as_ref().map(|p| format!(" at {p}")).unwrap_or_default();
        out.push_str(&format!("  -{entry}{point}: {}\n", f.detail));
    }
    out
}

pub fn verify_text(rep: &VerifyReport) -> String {
    let mut out = String::new();
    for c in &rep.checks {
        out.push_str(&check_text(c));
    }
    out.push_str(&format!("verified: {}\n", rep.passed));
    out
}

pub fn verify_latex(rep: &VerifyReport) -> String {
    let mut out = String::from("\\begin{itemize}\n");
    for c in &rep.checks {
        out.push_str(&format!(
            "\\item {:?}: {}\n",
            c.check,
            if c.passed { "pass" } else { "fail" }
        ));
    }
    out.push_str("\\end{itemize}\n");
    out
}

/// Per-point verdicts, then the summand conditions when everything is rigid.
pub struct RigidityView {
    pub verdicts: Vec<(Scalar, bool)>,
    pub conditions: Option<Vec<Scalar>>,
}

impl RigidityView {
    pub fn compute(inst: &Instance) -> Self {
        let verdicts = criterion::rigidity(inst);
        let conditions = if verdicts.iter().all(|(_, r)| *r) {
            criterion::summand_conditions(inst).ok()
        } else {
            None
        };
        RigidityView { verdicts, conditions }
    }

    pub fn exists(&self) -> Option<bool> {
        self.conditions
            .as_ref()
            .map(|c| c.iter().all(Scalar::is_zero))
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        for (x, rigid) in &self.verdicts {
            out.push_str(&format!(
                "point {x}: {}\n",
                if *rigid { "rigid" } else { "not rigid" }
            ));
        }
        match &self.conditions {
            Some(c) => {
                let parts: Vec<String> = c.iter().map(Scalar::to_string).collect();
                out.push_str(&format!("summand conditions: ({})\n", parts.join(", ")));
                out.push_str(&format!("exists: {}\n", self.exists().unwrap()));
            }
            None => out.push_str("criterion not applicable: some residue is not rigid\n"),
        }
        out
    }

    pub fn json(&self) -> serde_json::Value {
        serde_json::json!({
            "version": logconn::schema::SCHEMA_VERSION,
            "points": self.verdicts.iter().map(|(x, r)| serde_json::json!({
                "point": x.to_string(),
                "rigid": r,
            })).collect::<Vec<_>>(),
            "summand_conditions": self.conditions.as_ref().map(|c| c.iter().map(Scalar::to_string).collect::<Vec<_>>()),
            "exists": self.exists(),
        })
    }

    pub fn latex(&self) -> String {
        let mut out = String::new();
        for (x, rigid) in &self.verdicts {
            out.push_str(&format!(
                "$A({})$ is {}rigid.\\\\\n",
                latex_scalar(x),
                if *rigid { "" } else { "not " }
            ));
        }
        if let Some(c) = &self.conditions {
            let parts: Vec<String> = c.iter().map(latex_scalar).collect();
            out.push_str(&format!("$\\left({}\\right)$\n", parts.join(", ")));
        }
        out
    }
}
