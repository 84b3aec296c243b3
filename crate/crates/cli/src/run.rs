//! Command execution. Every command yields a JSON value and a text
//! rendering of the same content.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use attneg_core::meta::GeneralizedModel;
use attneg_core::translate::{instantiate, instantiated_atoms, instantiation_patterns};
use attneg_core::{
    aaf_extensions, adf_two_valued_models, classify, delta_pred, delta_prop, encode_adf,
    encode_conjunctive, encode_disjunctive, enumerate_complete, enumerate_models,
    enumerate_stable, is_valid, o_a, parse_prop, solve_higher, star_theory, theta, verify_oa,
    verify_theta, verify_thm2, verify_thm42, AafModel, CorrespondenceReport, Encoding, Framework,
    JointAttacks, Labelling, PropAssignment, PropFormula, RMode, StarOptions, Theory, Validity,
    WffSupport,
};
use serde_json::{json, Value};

use crate::args::{Command, From, Joint, Mode, RFlag, Semantics, StarFlags, Support, Theorem};
use crate::dsl::{self, InputDocument, Species};
use crate::error::CliError;

/// The result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    /// 0, or 2 when a verification found a mismatch.
    pub code: u8,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, code: 0 }
    }
}

/// Runs `command`; `input` is the document text for commands that read one.
pub fn run(command: &Command, input: Option<&str>) -> Result<Report, CliError> {
    if let Command::Valid { formula } = command {
        return valid(formula);
    }
    let text = input.ok_or_else(|| CliError::Usage("no input document".into()))?;
    let doc = dsl::parse(text)?;
    let name = command.name();
    let need = |allowed: &[Species]| -> Result<(), CliError> {
        if allowed.contains(&doc.species()) {
            Ok(())
        } else {
            Err(CliError::Species {
                command: name.into(),
                species: doc.species().to_string(),
                expected: allowed
                    .iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>()
                    .join(" or "),
            })
        }
    };
    let mut report = match command {
        Command::Extensions { semantics, .. } => {
            need(&[Species::Plain])?;
            extensions(&doc.framework()?, *semantics)?
        }
        Command::Translate { mode, star, .. } => {
            if *mode == Mode::Star {
                need(&[Species::Plain, Species::Higher])?;
            } else {
                need(&[Species::Plain])?;
            }
            translate(&doc, *mode, star)?
        }
        Command::Models { .. } => {
            need(&[Species::Plain])?;
            models(&doc)?
        }
        Command::Verify { theorem, .. } => {
            need(&[Species::Plain])?;
            verify(&doc.framework()?, *theorem)
        }
        Command::SolveHigher { star, .. } => {
            need(&[Species::Plain, Species::Higher])?;
            solve(&doc, star)?
        }
        Command::Aaf { .. } => {
            need(&[Species::Axiomatic])?;
            let af = doc.axiomatic_frame()?;
            aaf(af.s0(), &af.psi().to_string(), &aaf_extensions(&af)?)
        }
        Command::Encode { from, project, .. } => {
            let from = match from {
                Some(f) => *f,
                None => match doc.species() {
                    Species::Conjunctive => From::Conjunctive,
                    Species::Disjunctive => From::Disjunctive,
                    Species::Adf => From::Adf,
                    _ => {
                        need(&[Species::Conjunctive, Species::Disjunctive, Species::Adf])?;
                        unreachable!()
                    }
                },
            };
            encode(&doc, from, *project, &need)?
        }
        Command::Valid { .. } => unreachable!(),
    };
    if let Value::Object(map) = &mut report.json {
        map.insert("command".into(), json!(name));
        map.insert("species".into(), json!(doc.species().as_str()));
    }
    Ok(report)
}

fn framework_json(f: &Framework) -> Value {
    serde_json::to_value(f).expect("frameworks serialize")
}

fn labellings_json(labs: &[Labelling]) -> Value {
    serde_json::to_value(labs).expect("labellings serialize")
}

fn labellings_text(out: &mut String, labs: &[Labelling]) {
    let _ = writeln!(out, "{} labelling(s)", labs.len());
    for l in labs {
        let _ = writeln!(out, "  {l}");
    }
}

fn extensions(f: &Framework, semantics: Semantics) -> Result<Report, CliError> {
    let complete = enumerate_complete(f);
    let labs = match semantics {
        Semantics::Complete => complete,
        Semantics::Stable => enumerate_stable(f),
        Semantics::Grounded => vec![classify(&complete)?.grounded],
        Semantics::Preferred => classify(&complete)?.preferred,
    };
    let sem = format!("{semantics:?}").to_lowercase();
    let mut text = format!("framework: {f}\nsemantics: {sem}\n");
    labellings_text(&mut text, &labs);
    Ok(Report::ok(
        json!({
            "framework": framework_json(f),
            "semantics": sem,
            "labellings": labellings_json(&labs),
        }),
        text,
    ))
}

fn theory_json<F: std::fmt::Display>(th: &Theory<F>) -> Value {
    Value::Array(
        th.entries()
            .iter()
            .map(|(n, f)| json!({"name": n, "formula": f.to_string()}))
            .collect(),
    )
}

fn star_options(s: &StarFlags) -> StarOptions {
    StarOptions {
        joint: match s.joint {
            Joint::Implicit => JointAttacks::Implicit,
            Joint::Declared => JointAttacks::Declared,
        },
        wff_support: match s.wff_support {
            Support::PerAttacker => WffSupport::PerAttacker,
            Support::Aggregate => WffSupport::Aggregate,
        },
        r_mode: match s.r_mode {
            RFlag::Free => RMode::Free,
            RFlag::Pinned => RMode::Pinned,
            RFlag::Mentioned => RMode::Mentioned,
        },
        max_unknowns: s.max_unknowns,
    }
}

fn translate(doc: &InputDocument, mode: Mode, star: &StarFlags) -> Result<Report, CliError> {
    let mut text = String::new();
    let json = match mode {
        Mode::DeltaProp => {
            let f = doc.framework()?;
            let subst = doc.substitution();
            let th = if subst.is_empty() {
                delta_prop(&f)
            } else {
                instantiate(&f, &subst)?
            };
            let _ = write!(text, "# {}\n{th}", th.kind());
            json!({"kind": th.kind().to_string(), "theory": theory_json(&th)})
        }
        Mode::Theta => {
            let f = doc.framework()?;
            let (t0, t1) = theta(&f);
            let n = attneg_core::translate::defined_n(&f);
            let _ = write!(text, "# theta0\n{t0}# theta1\n{t1}# n := {n}\n");
            json!({
                "theta0": theory_json(&t0),
                "theta1": theory_json(&t1),
                "defined_n": n.to_string(),
            })
        }
        Mode::DeltaPred | Mode::OA => {
            let f = doc.framework()?;
            let th = delta_pred(&f);
            let _ = write!(text, "# delta-pred\n{th}");
            let mut v = json!({"kind": "delta-pred", "theory": theory_json(&th)});
            if mode == Mode::OA {
                let oa = o_a(&f);
                let _ = writeln!(text, "# o-a\no_a: {oa}");
                v["kind"] = json!("o-a");
                v["o_a"] = json!(oa.to_string());
            }
            v
        }
        Mode::Star => {
            let th = star_theory(&doc.higher_network()?, &star_options(star));
            let _ = write!(text, "# star\n{th}");
            json!({"kind": "star", "theory": theory_json(&th)})
        }
    };
    let mode_name = match mode {
        Mode::DeltaProp => "delta-prop",
        Mode::Theta => "theta",
        Mode::DeltaPred => "delta-pred",
        Mode::OA => "o-a",
        Mode::Star => "star",
    };
    let mut json = json;
    json["mode"] = json!(mode_name);
    Ok(Report::ok(json, text))
}

fn assignment_json(h: &PropAssignment) -> Value {
    Value::Object(
        h.iter()
            .map(|(a, v)| (a.to_string(), json!(v.to_string())))
            .collect(),
    )
}

fn assignment_text(h: &PropAssignment) -> String {
    let parts: Vec<String> = h.iter().map(|(a, v)| format!("{a}={v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn models(doc: &InputDocument) -> Result<Report, CliError> {
    let f = doc.framework()?;
    let subst = doc.substitution();
    let (th, atoms) = if subst.is_empty() {
        let atoms = f.arguments().iter().map(|a| a.to_string()).collect();
        (delta_prop(&f), atoms)
    } else {
        (instantiate(&f, &subst)?, instantiated_atoms(&f, &subst))
    };
    let formulas: Vec<PropFormula> = th.formulas().cloned().collect();
    let ms = enumerate_models(&formulas, &atoms)?;
    let mut text = format!("theory: {}\n{} model(s)\n", th.kind(), ms.len());
    for h in &ms {
        let _ = writeln!(text, "  {}", assignment_text(h));
    }
    let mut json = json!({
        "theory": th.kind().to_string(),
        "models": ms.iter().map(assignment_json).collect::<Vec<_>>(),
    });
    if !subst.is_empty() {
        let patterns: Vec<Labelling> = instantiation_patterns(&f, &subst)?.into_iter().collect();
        let _ = writeln!(text, "patterns:");
        labellings_text(&mut text, &patterns);
        json["patterns"] = labellings_json(&patterns);
    }
    Ok(Report::ok(json, text))
}

fn report_json(r: &CorrespondenceReport) -> Value {
    let mut v = serde_json::to_value(r).expect("reports serialize");
    v["verdict"] = json!(verdict(r.is_match()));
    v
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

fn verify(f: &Framework, theorem: Theorem) -> Report {
    let (ok, json, text) = match theorem {
        Theorem::Thm2 | Theorem::Thm42 | Theorem::Oa => {
            let r = match theorem {
                Theorem::Thm2 => verify_thm2(f),
                Theorem::Thm42 => verify_thm42(f),
                _ => verify_oa(f),
            };
            (r.is_match(), report_json(&r), r.to_string())
        }
        Theorem::Theta => {
            let r = verify_theta(f);
            let ok = r.stable.is_match() && r.non_stable.is_match() && r.union.is_match();
            let text = format!(
                "stable: {}non-stable: {}union: {}",
                r.stable, r.non_stable, r.union
            );
            let json = json!({
                "stable": report_json(&r.stable),
                "non_stable": report_json(&r.non_stable),
                "union": report_json(&r.union),
            });
            (ok, json, text)
        }
    };
    verification(&format!("{theorem:?}").to_lowercase(), ok, json, text)
}

fn verification(name: &str, ok: bool, mut json: Value, text: String) -> Report {
    json["theorem"] = json!(name);
    json["verdict"] = json!(verdict(ok));
    Report {
        json,
        text: format!("theorem: {name}\n{text}verdict: {}\n", verdict(ok)),
        code: if ok { 0 } else { 2 },
    }
}

fn model_json(m: &GeneralizedModel) -> Value {
    let ins: BTreeMap<&str, &str> = m
        .interp
        .in_values()
        .map(|(a, v)| (a, attneg_core::translate::value_to_label(v).as_str()))
        .collect();
    let r: BTreeMap<String, String> = m
        .interp
        .r_values()
        .map(|((x, y), v)| (format!("r({x},{y})"), v.to_string()))
        .collect();
    let wffs: BTreeMap<&String, String> =
        m.wff_status.iter().map(|(n, v)| (n, v.to_string())).collect();
    json!({"in": ins, "r": r, "wffs": wffs})
}

fn model_text(m: &GeneralizedModel) -> String {
    let ins: Vec<String> = m
        .interp
        .in_values()
        .map(|(a, v)| format!("{a}:{}", attneg_core::translate::value_to_label(v)))
        .collect();
    let r: Vec<String> = m
        .interp
        .r_values()
        .map(|((x, y), v)| format!("r({x},{y})={v}"))
        .collect();
    let w: Vec<String> = m.wff_status.iter().map(|(n, v)| format!("{n}={v}")).collect();
    format!("in {{{}}} r {{{}}} wffs {{{}}}", ins.join(", "), r.join(", "), w.join(", "))
}

fn solve(doc: &InputDocument, star: &StarFlags) -> Result<Report, CliError> {
    let opts = star_options(star);
    let ms = solve_higher(&doc.higher_network()?, &opts)?;
    let mut text = format!("{} model(s)\n", ms.len());
    for m in &ms {
        let _ = writeln!(text, "  {}", model_text(m));
    }
    Ok(Report::ok(
        json!({
            "options": serde_json::to_value(opts).expect("options serialize"),
            "models": ms.iter().map(model_json).collect::<Vec<_>>(),
        }),
        text,
    ))
}

fn aaf(s0: &[attneg_core::ArgumentId], psi: &str, models: &[AafModel]) -> Report {
    let mut text = format!("psi: {psi}\n{} relation(s)\n", models.len());
    for m in models {
        let pairs: Vec<String> = m.relation.iter().map(|(x, y)| format!("{x}->{y}")).collect();
        let _ = writeln!(text, "relation {{{}}}", pairs.join(","));
        for l in &m.labellings {
            let _ = writeln!(text, "  {l}");
        }
    }
    Report::ok(
        json!({
            "s0": s0,
            "psi": psi,
            "models": serde_json::to_value(models).expect("models serialize"),
        }),
        text,
    )
}

fn encoding_report(enc: &Encoding, labs: Vec<Labelling>, project: bool) -> (Value, String) {
    let labs: Vec<Labelling> = if project {
        let set: std::collections::BTreeSet<Labelling> =
            labs.iter().map(|l| l.project(&enc.projection)).collect();
        set.into_iter().collect()
    } else {
        labs
    };
    let mut text = format!(
        "framework: {}\nprojection: {}\n",
        enc.framework,
        enc.projection
            .iter()
            .map(|a| a.as_str())
            .collect::<Vec<_>>()
            .join(",")
    );
    labellings_text(&mut text, &labs);
    (
        json!({
            "framework": framework_json(&enc.framework),
            "projection": enc.projection,
            "projected": project,
            "labellings": labellings_json(&labs),
        }),
        text,
    )
}

fn encode(
    doc: &InputDocument,
    from: From,
    project: bool,
    need: &dyn Fn(&[Species]) -> Result<(), CliError>,
) -> Result<Report, CliError> {
    let mut report = match from {
        From::Conjunctive => {
            need(&[Species::Plain, Species::Conjunctive])?;
            let enc = encode_conjunctive(&doc.conjunctive_net()?)?;
            let labs = enumerate_complete(&enc.framework);
            let (json, text) = encoding_report(&enc, labs, project);
            Report::ok(json, text)
        }
        From::Disjunctive => {
            need(&[Species::Plain, Species::Disjunctive])?;
            let af = encode_disjunctive(&doc.disjunctive_net()?)?;
            aaf(af.s0(), &af.psi().to_string(), &aaf_extensions(&af)?)
        }
        From::Adf => {
            need(&[Species::Plain, Species::Adf])?;
            let adf = doc.adf_net()?;
            let enc = encode_adf(&adf)?;
            let labs = enumerate_stable(&enc.framework);
            let (mut json, mut text) = encoding_report(&enc, labs, project);
            let oracle = adf_two_valued_models(&adf);
            let agrees = oracle == enc.projected_two_valued();
            let _ = writeln!(text, "two-valued models of the conditions:");
            labellings_text(&mut text, &oracle);
            let _ = writeln!(text, "agreement: {}", verdict(agrees));
            json["two_valued_models"] = labellings_json(&oracle);
            json["agreement"] = json!(verdict(agrees));
            Report::ok(json, text)
        }
    };
    report.json["from"] = json!(format!("{from:?}").to_lowercase());
    Ok(report)
}

fn valid(formula: &str) -> Result<Report, CliError> {
    let f = parse_prop(formula).map_err(|e| match e {
        attneg_core::Error::Parse { col, msg } => CliError::Syntax { line: 1, col, msg },
        other => CliError::Core(other),
    })?;
    let (json, text) = match is_valid(&f) {
        Validity::Valid => (
            json!({"formula": f.to_string(), "verdict": "VALID"}),
            format!("{f}\nVALID\n"),
        ),
        Validity::Invalid(h) => (
            json!({
                "formula": f.to_string(),
                "verdict": "INVALID",
                "countermodel": assignment_json(&h),
            }),
            format!("{f}\nINVALID, countermodel {}\n", assignment_text(&h)),
        ),
    };
    let mut json = json;
    json["command"] = json!("valid");
    Ok(Report::ok(json, text))
}

#[cfg(test)]
mod tests {
    use super::*;
    use attneg_core::{ArgumentId, Label};

    #[test]
    fn mismatch_exits_two() {
        let f = Framework::new(vec![ArgumentId::new("a").unwrap()], vec![]).unwrap();
        let lab = enumerate_complete(&f).remove(0);
        let wrong = Labelling::new([(ArgumentId::new("a").unwrap(), Label::Out)].into());
        let r = CorrespondenceReport::new(&f, 1, [wrong].into(), [lab].into());
        let rep = verification("thm2", r.is_match(), report_json(&r), r.to_string());
        assert_eq!(rep.code, 2);
        assert_eq!(rep.json["verdict"], "MISMATCH");
        assert!(rep.text.contains("model only: {a:out}"));
    }
}
