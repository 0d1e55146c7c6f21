use std::path::Path;

use dyadic::catalog::{self, Via};
use dyadic::extension::{classify_against, enumerate_modular_cuts, ExtensionType};
use dyadic::linalg::{find_minor_exceeding, is_delta_modular, max_abs_minor, rank, row_point_count, MatrixText};
use dyadic::matroid::{Matroid, Set};
use dyadic::search::{self, ExcludedMinorVerdict};
use dyadic::structure::{self, ElementClassification};
use serde_json::json;

use crate::input::{load_matrix, load_matroid, matroid_text, representation_text};
use crate::report::Report;
use crate::{Command, Failure, Output, Route};

const MAX_MODULARITY_R: usize = 6;
const MAX_COUNTING_R: usize = 8;
const MAX_MINOR_FREE_R: usize = 5;
const CATALOG_MINORS: [&str; 4] = ["U(2,5)", "F7", "R9", "U24+U24"];

pub fn dispatch(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Modcheck { file, delta, totally } => modcheck(&file, delta, totally).map(Output::Report),
        Command::Construct { name, r, via, seed } => construct(&name, r, via, seed).map(Output::Text),
        Command::Epsilon { name, r, file } => epsilon(name.as_deref(), r, file.as_deref()).map(Output::Report),
        Command::VerifyMain { r_min, r_max } => verify_main(r_min, r_max).map(Output::Report),
        Command::ExcludedMinor { name } => excluded_minor(name.as_deref()).map(Output::Report),
        Command::Rank2 { delta } => rank2(delta).map(Output::Report),
        Command::ClassifyExtension { file, clique } => classify_extension(&file, &clique).map(Output::Report),
        Command::Analyze { file, clique_labels, clique } => {
            analyze(&file, &clique_labels, clique.as_deref()).map(Output::Report)
        }
        Command::Minor { host, pattern, cap } => minor(&host, &pattern, cap).map(Output::Report),
        Command::Projections { r, cap } => projections(r, cap).map(Output::Report),
    }
}

fn via(route: Route) -> Via {
    match route {
        Route::Matrix => Via::Matrix,
        Route::Projection => Via::Projection,
    }
}

fn need_r(name: &str, r: Option<usize>) -> Result<usize, Failure> {
    r.ok_or_else(|| Failure::Usage(format!("{name} needs --r")))
}

fn modcheck(file: &Path, delta: u64, totally: bool) -> Result<Report, Failure> {
    let m = load_matrix(file)?;
    let mut report = Report::new("modcheck");
    report.input("file", file.display().to_string()).input("delta", delta).input("totally", totally);
    if totally {
        let violation = (1..=m.nrows().min(m.ncols())).find_map(|k| find_minor_exceeding(&m, k, delta).transpose());
        let violation = violation.transpose()?;
        let witness = violation.as_ref().map(|v| json!({"rows": v.rows, "cols": v.cols, "det": v.det.to_string()}));
        report.verdict(
            "totally-delta-modular",
            "every square subdeterminant is at most delta",
            violation.is_none(),
            witness,
        );
    } else {
        let k = rank(&m);
        let pass = is_delta_modular(&m, delta)?;
        let max = max_abs_minor(&m, k)?;
        report.verdict(
            "delta-modular",
            "rank-sized subdeterminants are at most delta",
            pass,
            format!("max |minor| = {max}"),
        );
    }
    Ok(report)
}

fn construct(name: &str, r: Option<usize>, route: Route, seed: u64) -> Result<String, Failure> {
    match name {
        "A" => Ok(representation_text(&catalog::build_a(need_r(name, r)?)?)),
        "Aprime" => Ok(representation_text(&catalog::build_aprime(need_r(name, r)?)?)),
        "H" => Ok(representation_text(&catalog::build_h(need_r(name, r)?)?)),
        "D" => Ok(MatrixText::new(catalog::build_d(need_r(name, r)?)?).to_string()),
        "random" => {
            let r = need_r(name, r)?;
            Ok(MatrixText::new(search::random_2modular_matrix(r, r, seed)?).to_string())
        }
        _ => matroid_text(&named_matroid(name, r, route)?),
    }
}

fn named_matroid(name: &str, r: Option<usize>, route: Route) -> Result<Matroid, Failure> {
    Ok(match name {
        "A" => Matroid::from_representation(&catalog::build_a(need_r(name, r)?)?)?,
        "Aprime" => Matroid::from_representation(&catalog::build_aprime(need_r(name, r)?)?)?,
        "H" => Matroid::from_representation(&catalog::build_h(need_r(name, r)?)?)?,
        "T" => catalog::build_t(need_r(name, r)?, via(route))?,
        "Tprime" => catalog::build_tprime(need_r(name, r)?, via(route))?,
        _ => catalog::build_named(name)?,
    })
}

fn epsilon(name: Option<&str>, r: Option<usize>, file: Option<&Path>) -> Result<Report, Failure> {
    let mut report = Report::new("epsilon");
    let m = match (name, file) {
        (Some(name), None) => {
            report.input("name", name).input("r", r);
            named_matroid(name, r, Route::Matrix)?
        }
        (None, Some(file)) => {
            report.input("file", file.display().to_string());
            load_matroid(file)?
        }
        _ => return Err(Failure::Usage("give exactly one of NAME or --file".into())),
    };
    let eps = m.epsilon();
    let witness = json!({"epsilon": eps, "size": m.size(), "rank": m.rank()});
    match (name, r) {
        (Some("T" | "Tprime"), Some(r)) => {
            let want = catalog::extremal_size(r);
            report.verdict("epsilon-extremal", "points of T_r and T'_r number C(r+2,2) - 2", eps == want, witness)
        }
        _ => report.verdict("epsilon", "number of points", true, witness),
    };
    Ok(report)
}

fn minor_free_of(m: &Matroid, names: &[&str]) -> Result<serde_json::Value, Failure> {
    for name in names {
        let pattern = catalog::build_named(name)?;
        if let Some(w) = structure::has_minor(m, &pattern)? {
            return Ok(json!({"minor": name, "witness": w}));
        }
    }
    Ok(serde_json::Value::Null)
}

fn verify_main(r_min: usize, r_max: usize) -> Result<Report, Failure> {
    if !(2 <= r_min && r_min <= r_max && r_max <= MAX_COUNTING_R) {
        return Err(Failure::Usage(format!("need 2 <= r-min <= r-max <= {MAX_COUNTING_R}")));
    }
    let mut report = Report::new("verify-main");
    report.input("r_min", r_min).input("r_max", r_max);
    for r in r_min..=r_max {
        let a = catalog::build_a(r)?;
        let ap = catalog::build_aprime(r)?;
        if r <= MAX_MODULARITY_R {
            for (claim, anchor, rep) in
                [("A-2-modular", "A_r is 2-modular", &a), ("Aprime-2-modular", "A'_r is 2-modular", &ap)]
            {
                let k = rank(rep.matrix());
                let pass = is_delta_modular(rep.matrix(), 2)?;
                let max = max_abs_minor(rep.matrix(), k)?;
                report.verdict(&format!("{claim}:r={r}"), anchor, pass, format!("max |minor| = {max}"));
            }
        }
        let want = catalog::extremal_size(r);
        let points = row_point_count(&a.matrix().transpose());
        report.verdict(
            &format!("row-points:r={r}"),
            "A_r has C(r+2,2) - 2 pairwise non-parallel nonzero columns",
            points == want,
            json!({"points": points, "expected": want}),
        );
        let t = catalog::build_t(r, Via::Matrix)?;
        let tp = catalog::build_tprime(r, Via::Matrix)?;
        let eps = (t.epsilon(), tp.epsilon());
        report.verdict(
            &format!("epsilon:r={r}"),
            "points of T_r and T'_r number C(r+2,2) - 2",
            eps == (want, want),
            json!({"T": eps.0, "Tprime": eps.1, "expected": want}),
        );
        if r <= MAX_MINOR_FREE_R {
            for (label, m) in [("T", &t), ("Tprime", &tp)] {
                let found = minor_free_of(m, &CATALOG_MINORS)?;
                report.verdict(
                    &format!("{label}-minor-free:r={r}"),
                    "T_r and T'_r have no U(2,5), F7, R9 or U24+U24 minor",
                    found.is_null(),
                    if found.is_null() { json!("none") } else { found },
                );
            }
        }
    }
    Ok(report)
}

fn excluded_minor(name: Option<&str>) -> Result<Report, Failure> {
    let names: Vec<&str> = match name {
        Some(n) => vec![n],
        None => vec!["U24+U24", "U8", "U8p"],
    };
    let mut report = Report::new("excluded-minor");
    report.input("names", &names);
    for n in names {
        let catalog_name = match n {
            "U24+U24" | "U8" | "U8p" => n,
            "U25" => "U(2,5)",
            other => return Err(Failure::Usage(format!("unknown excluded-minor name {other:?}"))),
        };
        let m = catalog::build_named(catalog_name)?;
        let result = search::verify_excluded_minor_2modular(&m)?;
        report.verdict(
            &format!("excluded-minor:{n}"),
            "excluded minor for totally 2-modular representability",
            result.verdict == ExcludedMinorVerdict::ExcludedMinor,
            result,
        );
    }
    Ok(report)
}

/// Documented values of the largest rank-2 uniform matroid.
fn known_rank2(delta: u64) -> Option<usize> {
    match delta {
        1 => Some(3),
        2 => Some(4),
        4 => Some(6),
        6 => Some(8),
        7 => Some(10),
        _ => None,
    }
}

fn rank2(delta: u64) -> Result<Report, Failure> {
    let result = search::rank2_max_size(delta)?;
    let oracle = search::rank2_max_size_enlarged(delta)?;
    let matrix = result.witness_matrix();
    let mut report = Report::new("rank2");
    report.input("delta", delta);
    report.verdict(
        "rank2-max-size",
        "largest n with U(2,n) Delta-modular",
        is_delta_modular(&matrix, delta)?,
        json!({"n_max": result.n_max, "witness_matrix": matrix.rows_vec()}),
    );
    report.verdict(
        "rank2-enlarged-oracle",
        "candidate bound |a| <= Delta loses nothing",
        oracle.n_max == result.n_max,
        json!({"n_max": oracle.n_max}),
    );
    if let Some(want) = known_rank2(delta) {
        report.verdict("rank2-known-value", "documented rank-2 value", result.n_max == want, json!({"expected": want}));
    }
    Ok(report)
}

fn prefix_set(m: &Matroid, prefix: &str) -> Set {
    (0..m.size()).filter(|&i| m.label(i).starts_with(prefix)).fold(0, |s, i| s | (1 << i))
}

fn classify_extension(file: &Path, prefix: &str) -> Result<Report, Failure> {
    let m = load_matroid(file)?;
    let x = prefix_set(&m, prefix);
    let mut report = Report::new("classify-extension");
    report.input("file", file.display().to_string()).input("clique", prefix);
    for e in (0..m.size()).filter(|&e| x & (1 << e) == 0) {
        let t = structure::classify_extension_element(&m, x, e)?;
        let c = ElementClassification::new(&m, e, &t);
        report.verdict(&format!("classify:{}", c.element), "type of a clique extension element", true, c);
    }
    Ok(report)
}

fn claim_anchor(id: &str) -> &'static str {
    match id {
        "outside-elements-type-a-or-b" => "outside elements are type (a) or type (b)",
        "size-bound" => "|M| <= C(r+2,2) - 2",
        "outside-count-equals-lines-plus-circuits" => "outside elements biject with lines in L and circuits in C",
        "special-points-at-most-21" => "at most 21 special points",
        "three-outside-special-points-at-most-21" => "at most three outside elements give at most 21 special points",
        "type-a-bundle-special-points-at-most-1" => {
            "type (a) elements on lines through a common element give at most one special point"
        }
        "tprime-case-special-points-at-most-2" => "the T'_r configuration gives at most two special points",
        "circuit-pairs-meet-in-two-inside-k5" => "two circuits in C meet in two elements inside an M(K_5)",
        "mixed-pairs-share-a-k4" => "a type (a) and a type (b) element share an M(K_4)",
        _ => "clique analysis",
    }
}

fn analyze(file: &Path, labels: &[String], prefix: Option<&str>) -> Result<Report, Failure> {
    let m = load_matroid(file)?;
    let x = match prefix {
        Some(p) => prefix_set(&m, p),
        None if !labels.is_empty() => m.set_of(labels)?,
        None => return Err(Failure::Usage("give --clique-labels or --clique".into())),
    };
    let analysis = structure::analyze_clique_extension(&m, x)?;
    let mut report = Report::new("analyze");
    report.input("file", file.display().to_string()).input("clique", m.labels_of(x));
    for c in &analysis.claims {
        report.verdict(&c.id, claim_anchor(&c.id), !c.applicable || c.holds, c);
    }
    report.verdict("analysis", "spanning clique analysis", analysis.pass, &analysis);
    Ok(report)
}

fn minor(host: &Path, pattern_name: &str, cap: usize) -> Result<Report, Failure> {
    let m = load_matroid(host)?;
    let pattern = catalog::build_named(pattern_name)?;
    let found = structure::has_minor_with_cap(&m, &pattern, cap)?;
    let mut report = Report::new("minor");
    report.input("host", host.display().to_string()).input("pattern", pattern_name).input("cap", cap);
    match found {
        Some(w) => {
            let ok = w.verify(&m, &pattern);
            report.verdict("minor-search", "minor witness replays to the pattern", ok, w)
        }
        None => report.verdict("minor-search", "exhaustive minor search", true, "none"),
    };
    Ok(report)
}

fn projections(r: usize, cap: usize) -> Result<Report, Failure> {
    if !(3..=4).contains(&r) {
        return Err(Failure::Usage("projections supports r = 3 or 4".into()));
    }
    let base = catalog::build_mk(r + 1)?;
    let cuts = enumerate_modular_cuts(&base, cap)?;
    let patterns: Vec<Matroid> =
        ["U(2,5)", "F7", "R9"].iter().map(|n| catalog::build_named(n)).collect::<Result<_, _>>()?;
    let mut admissible = Vec::new();
    let mut others = Vec::new();
    for cut in &cuts {
        // Nonempty keeps the rank; no rank-one flat keeps the extension simple.
        if cut.flats().is_empty() || cut.flats().iter().any(|&f| base.rank_of(f) <= 1) {
            continue;
        }
        let m = cut.extend("p")?;
        let mut free = true;
        for p in &patterns {
            if structure::has_minor(&m, p)?.is_some() {
                free = false;
                break;
            }
        }
        if !free {
            continue;
        }
        let e = base.size();
        let t = classify_against(&m, base.ground(), e);
        let c = ElementClassification::new(&m, e, &t);
        let entry = json!({"minimal_flats": cut.minimal_flats().iter().map(|&f| base.labels_of(f)).collect::<Vec<_>>(), "classification": c});
        if matches!(t, ExtensionType::Other { .. }) {
            others.push(entry.clone());
        }
        admissible.push(entry);
    }
    let mut report = Report::new("projections");
    report.input("r", r).input("cap", cap);
    report.verdict(
        "projections-type-a-or-b",
        "simple extensions of a clique without U(2,5), F7, R9 are type (a) or (b)",
        others.is_empty(),
        json!({"modular_cuts": cuts.len(), "admissible": admissible.len(), "other": others, "extensions": admissible}),
    );
    Ok(report)
}
