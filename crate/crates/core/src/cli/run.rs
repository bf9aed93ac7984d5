//! Pipeline orchestration and reports.

use serde::Serialize;

use crate::completion::{CompletionOptions, Status};
use crate::decide::{enumerate_normal_forms, extract_presentation};
use crate::error::{Error, Result};
use crate::pipeline::Pipeline;

use super::problem::Problem;

#[derive(Debug, Clone, Default)]
pub struct RunFlags {
    /// Overrides the problem's `option fuel`.
    pub fuel: Option<u64>,
    pub trace: bool,
    pub show_presentation: bool,
    pub enumerate_nf: Option<usize>,
    pub skip_unit_deduce: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryReport {
    pub lhs: String,
    pub rhs: String,
    /// `equal`, `not-equal` or `undecided`.
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_forms: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rewrites: Option<[Vec<String>; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub generators: Vec<String>,
    pub relations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalFormReport {
    pub max_len: usize,
    pub count: usize,
    pub words: Vec<String>,
    pub grew_at_max: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub status: String,
    pub steps: u64,
    pub rules: Vec<String>,
    pub queries: Vec<QueryReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_forms: Option<NormalFormReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<String>>,
}

impl Report {
    /// 0 when completion finished, 2 when it ran out of fuel.
    pub fn exit_code(&self) -> i32 {
        if self.status == Status::Completed.as_str() {
            0
        } else {
            2
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("status: {} ({} steps)\n", self.status, self.steps);
        s += &format!("rules ({}):\n", self.rules.len());
        for r in &self.rules {
            s += &format!("  {r}\n");
        }
        if !self.queries.is_empty() {
            s += "queries:\n";
            for q in &self.queries {
                s += &format!("  {} = {}: {}\n", q.lhs, q.rhs, q.verdict);
                if let Some(rw) = &q.rewrites {
                    for chain in rw {
                        s += &format!("    {}\n", chain.join(" -> "));
                    }
                }
            }
        }
        if let Some(p) = &self.presentation {
            s += &format!("presentation: <{}>\n", p.generators.join(", "));
            for r in &p.relations {
                s += &format!("  {r}\n");
            }
        }
        if let Some(n) = &self.normal_forms {
            s += &format!(
                "normal forms up to length {}: {}{}\n",
                n.max_len,
                n.count,
                if n.grew_at_max { " (still growing)" } else { "" }
            );
            s += &format!("  {}\n", n.words.join(", "));
        }
        if let Some(t) = &self.trace {
            s += "trace:\n";
            for l in t {
                s += &format!("  {l}\n");
            }
        }
        s
    }
}

pub fn run(problem: &Problem, flags: &RunFlags) -> Result<Report> {
    let mut problem = problem.clone();
    if let Some(f) = flags.fuel {
        problem.options.fuel = Some(f);
    }
    let opts = CompletionOptions {
        skip_unit_deduce: flags.skip_unit_deduce,
        record_trace: flags.trace,
        ..Default::default()
    };
    let p = Pipeline::run(&problem, opts)?;
    let sig = &p.system.sig;
    let completed = p.completion.status == Status::Completed;

    let mut queries = Vec::new();
    for (s, t) in &problem.queries {
        let mut q = QueryReport {
            lhs: sig.render(s),
            rhs: sig.render(t),
            verdict: "undecided".into(),
            normal_forms: None,
            rewrites: None,
        };
        if completed {
            let (ns, nt) = (p.system.normalize(s), p.system.normalize(t));
            q.verdict = if ns == nt { "equal" } else { "not-equal" }.into();
            q.normal_forms = Some([sig.render(&ns), sig.render(&nt)]);
            if flags.trace {
                let chain = |x| {
                    let (nf, tr) = p.system.normalize_traced(x);
                    p.system.render_trace(&tr, &nf)
                };
                q.rewrites = Some([chain(s), chain(t)]);
            }
        }
        queries.push(q);
    }

    let presentation = if flags.show_presentation || flags.enumerate_nf.is_some() {
        Some(extract_presentation(&p.augmented, &problem.theory)?)
    } else {
        None
    };
    let normal_forms = match (flags.enumerate_nf, &presentation) {
        (Some(max_len), Some(pres)) if completed => {
            let f = problem.theory.sigs[0].assoc;
            let nf = enumerate_normal_forms(&p.system, f, &pres.generators, max_len);
            Some(NormalFormReport {
                max_len,
                count: nf.words.len(),
                words: nf.words.iter().map(|w| sig.word_to_string(w)).collect(),
                grew_at_max: nf.grew_at_max,
            })
        }
        _ => None,
    };
    Ok(Report {
        status: p.completion.status.as_str().into(),
        steps: p.completion.steps_used,
        rules: p.completion.rules.iter().map(|r| r.render(sig)).collect(),
        queries,
        presentation: presentation
            .filter(|_| flags.show_presentation)
            .map(|pr| PresentationReport {
                generators: pr.render_generators(sig),
                relations: pr.render_relations(sig),
            }),
        normal_forms,
        trace: flags
            .trace
            .then(|| p.completion.trace.iter().map(|e| e.render(sig)).collect()),
    })
}

/// Parses and runs a problem file; input problems become `Err`.
pub fn run_source(text: &str, flags: &RunFlags) -> Result<Report> {
    let problem = super::problem::parse_problem(text)?;
    run(&problem, flags)
}

/// Exit code for an error: every error is an input error here.
pub fn error_exit_code(_: &Error) -> i32 {
    1
}
