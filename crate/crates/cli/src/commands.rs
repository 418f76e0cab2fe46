use std::io::Read;
use std::path::Path;
use std::time::Instant;

use projlink::atlas::{
    confluence_audit, enumerate_classes, relation_lift_compatibility, verify_lift_injectivity,
    VerificationReport,
};
use projlink::jsj::format::{parse_cover, parse_tree};
use projlink::jsj::generate::{random_cover, random_tree};
use projlink::jsj::{lemma44_check, outermost, potential, validate_tree, CoverSpec};
use projlink::{classify, isotopic, lift, normal_form, AmbientSpace, LinkError, TorusLink};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, to_value, Value};

use crate::output::{Outcome, Report};
use crate::{Command, JsjCommand, VerifyKind};

pub fn run(command: Command) -> Report {
    match command {
        Command::Canon { space, triple } => canon(space.space, &triple),
        Command::Isotopic { space, triples } => isotopic_cmd(space.space, &triples),
        Command::Lift { triple } => lift_cmd(&triple),
        Command::Atlas { space, bound } => atlas(space.space, bound),
        Command::Verify { kind, space, bound } => verify(kind, space, bound),
        Command::Jsj { command } => jsj(command),
    }
}

fn link_error(command: &'static str, e: &LinkError) -> Report {
    Report::error(command, e.code(), e.to_string(), Outcome::Usage)
}

fn triple(space: AmbientSpace, v: &[i64]) -> Result<TorusLink, LinkError> {
    TorusLink::new(space, v[0], v[1], v[2])
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    to_value(x).expect("domain types serialize")
}

fn canon(space: AmbientSpace, v: &[i64]) -> Report {
    let link = match triple(space, v) {
        Ok(link) => link,
        Err(e) => return link_error("canon", &e),
    };
    let (nf, witness) = normal_form(&link);
    Report::ok(
        "canon",
        json!({
            "input": value(&link),
            "normal_form": value(&nf),
            "components": link.component_count(),
            "classification": value(&classify(&link)),
            "witness": value(&witness),
        }),
    )
}

fn isotopic_cmd(space: AmbientSpace, v: &[i64]) -> Report {
    let pair = triple(space, &v[..3]).and_then(|a| Ok((a, triple(space, &v[3..])?)));
    let (a, b) = match pair {
        Ok(pair) => pair,
        Err(e) => return link_error("isotopic", &e),
    };
    match isotopic(&a, &b) {
        Ok((same, witness)) => Report::ok(
            "isotopic",
            json!({ "inputs": [value(&a), value(&b)], "isotopic": same, "witness": value(&witness) }),
        ),
        Err(e) => link_error("isotopic", &e),
    }
}

fn lift_cmd(v: &[i64]) -> Report {
    match triple(AmbientSpace::Projective, v).and_then(|link| Ok((link, lift(&link)?))) {
        Ok((link, up)) => Report::ok("lift", json!({ "input": value(&link), "lift": value(&up) })),
        Err(e) => link_error("lift", &e),
    }
}

fn atlas(space: AmbientSpace, bound: u32) -> Report {
    let start = Instant::now();
    let atlas = enumerate_classes(space, bound);
    let mut report = Report::ok("atlas", value(&atlas));
    report.diagnostics.push(format!(
        "{} classes over {} triples in {:?}",
        atlas.class_count(),
        atlas.classes.values().map(Vec::len).sum::<usize>(),
        start.elapsed()
    ));
    report
}

fn verify(kind: VerifyKind, space: Option<AmbientSpace>, bound: Option<u32>) -> Report {
    let bound = bound.unwrap_or(kind.default_bound());
    let result = match (kind, space) {
        (VerifyKind::Confluence, Some(space)) => confluence_audit(space, bound),
        (VerifyKind::Confluence, None) => {
            VerificationReport::combine(AmbientSpace::ALL.map(|s| confluence_audit(s, bound)))
        }
        (_, Some(AmbientSpace::Sphere)) => {
            return Report::error(
                "verify",
                "WRONG_SPACE",
                format!("{} ranges over RP3 links only", kind.name()),
                Outcome::Usage,
            )
        }
        (VerifyKind::LiftInjectivity, _) => verify_lift_injectivity(bound),
        (VerifyKind::RelationLift, _) => relation_lift_compatibility(bound),
    };

    let mut payload = value(&result);
    if let Value::Object(map) = &mut payload {
        map.remove("elapsed_ms");
        map.insert("kind".into(), kind.name().into());
    }
    let mut report = if result.holds() {
        Report::ok("verify", payload)
    } else {
        Report::refuted("verify", payload)
    };
    report.diagnostics.push(format!(
        "{}: {} pairs checked, {} violations, {} ms",
        kind.name(),
        result.checked_pairs,
        result.violations.len(),
        result.elapsed.as_millis()
    ));
    report
}

fn read_input(path: &Path) -> std::io::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn jsj(command: JsjCommand) -> Report {
    match command {
        JsjCommand::Outermost { file } => jsj_outermost(&file),
        JsjCommand::CoverCheck { file } => jsj_cover_check(&file),
        JsjCommand::SampleTree { seed, vertices } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Report::ok("jsj/sample-tree", value(&random_tree(&mut rng, vertices)))
        }
        JsjCommand::SampleCover { seed, vertices } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Report::ok(
                "jsj/sample-cover",
                value(&random_cover(&mut rng, vertices).cover),
            )
        }
    }
}

fn malformed(command: &'static str, message: String) -> Report {
    Report::error(command, "MALFORMED_INPUT", message, Outcome::Usage)
}

fn jsj_outermost(file: &Path) -> Report {
    const CMD: &str = "jsj/outermost";
    let raw = match read_input(file)
        .map_err(|e| e.to_string())
        .and_then(|s| parse_tree(&s).map_err(|e| e.to_string()))
    {
        Ok(raw) => raw,
        Err(e) => return malformed(CMD, e),
    };
    let tree = match validate_tree(&raw) {
        Ok(tree) => tree,
        Err(errors) => {
            let code = errors.0.first().map_or("NOT_A_TREE", |v| v.code());
            return Report::error_with(
                CMD,
                code,
                errors.to_string(),
                value(&errors.0),
                Outcome::Failed,
            );
        }
    };
    let outer: Vec<&str> = outermost(&tree).into_iter().map(|v| tree.id(v)).collect();
    Report::ok(
        CMD,
        json!({ "potential": value(&potential(&tree).by_id(&tree)), "outermost": outer }),
    )
}

fn jsj_cover_check(file: &Path) -> Report {
    const CMD: &str = "jsj/cover-check";
    let raw = match read_input(file)
        .map_err(|e| e.to_string())
        .and_then(|s| parse_cover(&s).map_err(|e| e.to_string()))
    {
        Ok(raw) => raw,
        Err(e) => return malformed(CMD, e),
    };
    let spec = match CoverSpec::from_raw(&raw) {
        Ok(spec) => spec,
        Err(e) => {
            let details = match &e {
                projlink::jsj::CoverError::Tree(errors) => value(&errors.0),
                projlink::jsj::CoverError::InvalidInvolution(v) => value(v),
            };
            return Report::error_with(CMD, e.code(), e.to_string(), details, Outcome::Failed);
        }
    };
    let report = lemma44_check(&spec);
    if report.mismatches == 0 {
        Report::ok(CMD, value(&report))
    } else {
        Report::refuted(CMD, value(&report))
    }
}
