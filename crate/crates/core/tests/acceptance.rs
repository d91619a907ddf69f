//! End-to-end acceptance run over the shipped data. Prints one line per
//! criterion and fails if any criterion fails.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use equicat::functors::check_global;
use equicat::gspaces::check_top_fibration;
use equicat::kan::{counit_single, extend, restrict_global};
use equicat::report::Report;
use equicat::schema::{data_dir, read_catalog, read_gsets, read_ispace};
use equicat::site::{check_grothendieck, check_restriction_object, check_site_axioms, SiteCatalog};
use equicat::spectra::{
    check_spectrum, check_sphere_fixed_points, global_sphere, pointed_set, sphere, sphere_lax, sphere_smash_iso,
    sphere_spectrum, spectrum_from_lax, suspension,
};
use equicat::suite::{run, SuiteInput, SuiteName};

type Outcome = Result<String, String>;

fn shipped_catalog() -> Arc<SiteCatalog> {
    Arc::new(read_catalog(&data_dir().join("standard-catalog.json")).expect("shipped catalog loads"))
}

fn passed(report: &Report, what: &str) -> Outcome {
    if report.all_passed() {
        let checked: u64 = report.checks.iter().map(|e| e.checked).sum();
        Ok(format!("{what}: {} entries, {checked} cases", report.checks.len()))
    } else {
        let first = report.failures().next().expect("a failure");
        Err(format!("{what}: {} failed, first {} {:?}", report.failures().count(), first.name, first.witness))
    }
}

fn site_axioms(catalog: &Arc<SiteCatalog>) -> Outcome {
    let names: Vec<&str> = catalog.groups().iter().map(|g| g.name()).collect();
    if names != ["e", "C2", "C3", "C2xC2", "S3"] || catalog.dim_cap() != 3 {
        return Err(format!("unexpected shipped catalog: {names:?} cap {}", catalog.dim_cap()));
    }
    let mut report = check_site_axioms(catalog);
    report.merge("fibration", check_restriction_object(catalog));
    passed(&report, "site axioms and restriction object")
}

fn grothendieck(catalog: &Arc<SiteCatalog>) -> Outcome {
    passed(&check_grothendieck(catalog), "diagonal hom tables")
}

fn top_fibration() -> Outcome {
    let gsets = read_gsets(&data_dir().join("gsets.json")).map_err(|e| e.to_string())?;
    if let Some(big) = gsets.sets.iter().find(|s| s.set.len() > 5) {
        return Err(format!("{} has more than five points", big.name));
    }
    passed(&check_top_fibration(&gsets), "mapping-space restriction")
}

fn adjunction(catalog: &Arc<SiteCatalog>) -> Outcome {
    let input = SuiteInput {
        catalog: catalog.clone(),
        gsets: equicat::gspaces::GSetCatalog::standard(),
        suites: vec![SuiteName::Adjunction, SuiteName::Triangles],
        seed: 7,
        instance_count: 50,
        faults: Vec::new(),
    };
    let report = run(&input);
    for instance in ["sphere", "constant", "suspension-2", "suspension-3", "suspension-4", "random"] {
        for law in ["unit.bijection", "counit.inverse"] {
            let name = format!("adjunction.{instance}.{law}");
            if report.entry(&name).is_none() {
                return Err(format!("missing {name}"));
            }
        }
        for law in ["triangle.restriction", "triangle.extension"] {
            let name = format!("triangles.{instance}.{law}");
            if report.entry(&name).is_none() {
                return Err(format!("missing {name}"));
            }
        }
    }
    let random = report.entry("adjunction.random.instances").map(|e| e.checked).unwrap_or(0);
    let towers = report.entry("adjunction.random.extension-functoriality").map(|e| e.checked).unwrap_or(0);
    if random < 50 {
        return Err(format!("only {random} random instances checked"));
    }
    passed(&report, &format!("adjunction over {random} random I-spaces and {towers} composable pairs"))
}

fn counit_on_sphere(catalog: &Arc<SiteCatalog>) -> Outcome {
    let g = catalog.group_by_name("C2").map_err(|e| e.to_string())?;
    let v = catalog.rep_by_label(g, "sign").map_err(|e| e.to_string())?;
    let global = global_sphere(catalog).map_err(|e| e.to_string())?;
    let restricted = restrict_global(&global).map_err(|e| e.to_string())?;
    let ext = extend(&restricted, catalog, g).map_err(|e| e.to_string())?;
    let value = ext.functor.value(v);
    let classes: Vec<&str> = value.non_base().map(|c| value.label(c)).collect();
    // Hand-derived: the pairs [s, x] with s in {+1, -1} and x in {+, -} fall
    // into [+1, +] = [-1, -] and [+1, -] = [-1, +], and the generator acts by
    // s -> -s, which exchanges the two.
    if classes != ["[[+0],+]", "[[+0],-]"] {
        return Err(format!("classes {classes:?}"));
    }
    let generator = value.group().element_by_label("1").ok_or("C2 has no element 1")?;
    let (a, b) = (value.index_of("[[+0],+]").unwrap(), value.index_of("[[+0],-]").unwrap());
    if value.act(generator, a) != b || value.act(generator, b) != a {
        return Err("the generator does not swap the classes".into());
    }
    let c = counit_single(global.component(g)).map_err(|e| e.to_string())?;
    let target = sphere(catalog.rep(g, v));
    let eps = &c.epsilon[v];
    let images: Vec<&str> = [a, b].iter().map(|&p| target.label(eps.apply(p))).collect();
    if images != ["+", "-"] || !eps.is_bijection(target.len()) {
        return Err(format!("counit sends the classes to {images:?}"));
    }
    let counit_value = c.extension.functor.value(v);
    for h in counit_value.group().elements() {
        for p in 0..counit_value.len() {
            if eps.apply(counit_value.act(h, p)) != target.act(h, eps.apply(p)) {
                return Err("counit is not equivariant".into());
            }
        }
    }
    Ok("2 classes swapped by the generator, counit [id,+] -> +, [id,-] -> -".into())
}

fn spectrum_axioms(catalog: &Arc<SiteCatalog>) -> Outcome {
    let s = sphere_spectrum(catalog).map_err(|e| e.to_string())?;
    let report = check_spectrum(&s);
    let summary = passed(&report, "sphere spectrum")?;
    let lax = sphere_lax(catalog).map_err(|e| e.to_string())?;
    let from_lax = spectrum_from_lax(&lax).map_err(|e| e.to_string())?;
    let mut compared = 0;
    for (c, a) in s.base().components().iter().enumerate() {
        let reps = a.reps();
        for (v, rv) in reps.iter().enumerate() {
            for (w, rw) in reps.iter().enumerate() {
                let expected = sphere_smash_iso(rv, rw, catalog.dim_cap()).ok();
                if s.sigma(c, v, w) != expected.as_ref() || from_lax.sigma(c, v, w) != expected.as_ref() {
                    return Err(format!("structure map differs at {} {} {}", a.group().name(), rv.label(), rw.label()));
                }
                compared += usize::from(expected.is_some());
            }
        }
    }
    Ok(format!("{summary}; lax data reproduces all {compared} structure maps"))
}

fn global_coherence(catalog: &Arc<SiteCatalog>) -> Outcome {
    let mut report = Report::new();
    report.merge("sphere", check_global(&global_sphere(catalog).map_err(|e| e.to_string())?));
    for k in 2..=4 {
        let s = suspension(catalog, &pointed_set(k)).map_err(|e| e.to_string())?;
        report.merge(&format!("suspension-{k}"), check_global(&s));
    }
    for required in ["sphere.restriction-iso.cocycle", "sphere.trivial-rep-action"] {
        if report.entry(required).is_none() {
            return Err(format!("missing {required}"));
        }
    }
    passed(&report, "global sphere and suspensions")
}

fn fixed_points(catalog: &Arc<SiteCatalog>) -> Outcome {
    passed(&check_sphere_fixed_points(catalog), "rep and cyclic subgroup pairs")
}

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_equicat")
}

fn suite_json(config: &Path) -> Result<(i32, String), String> {
    let out = Command::new(binary())
        .args(["suite", "--format", "json", "--config"])
        .arg(config)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned()))
}

fn fault_sensitivity() -> Outcome {
    let fixtures = [
        "broken-rho",
        "non-equivariant-phi",
        "corrupted-morphism",
        "non-associative-mu",
        "shifted-sigma",
        "non-equivariant-global-map",
    ];
    for name in fixtures {
        let path: PathBuf = data_dir().join("faults").join(format!("{name}.json"));
        let (code, stdout) = suite_json(&path)?;
        if code != 1 {
            return Err(format!("{name}: exit {code}"));
        }
        let report: serde_json::Value = serde_json::from_str(&stdout).map_err(|e| format!("{name}: {e}"))?;
        let witnessed = report["checks"].as_array().into_iter().flatten().any(|c| {
            c["status"] == "fail" && c["witness"].as_object().is_some_and(|w| !w.is_empty())
        });
        if !witnessed {
            return Err(format!("{name}: no failing entry with a witness"));
        }
    }
    Ok("all six fixtures exit 1 with a witness".into())
}

fn determinism() -> Outcome {
    let config = data_dir().join("suite-default.json");
    let (c1, first) = suite_json(&config)?;
    let (c2, second) = suite_json(&config)?;
    if c1 != 0 || c2 != 0 {
        return Err(format!("default suite exit codes {c1} and {c2}"));
    }
    if first != second {
        return Err("reports differ between runs".into());
    }
    Ok(format!("{} identical bytes", first.len()))
}

/// Written to the process stdout directly so the lines survive output capture.
fn report_line(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

#[test]
fn acceptance() {
    let catalog = shipped_catalog();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("site axioms", Box::new(|| site_axioms(&catalog))),
        ("grothendieck round trip", Box::new(|| grothendieck(&catalog))),
        ("top fibration", Box::new(top_fibration)),
        ("adjunction equivalence", Box::new(|| adjunction(&catalog))),
        ("counit on sphere", Box::new(|| counit_on_sphere(&catalog))),
        ("spectrum axioms", Box::new(|| spectrum_axioms(&catalog))),
        ("global coherence", Box::new(|| global_coherence(&catalog))),
        ("fixed points", Box::new(|| fixed_points(&catalog))),
        ("fault sensitivity", Box::new(fault_sensitivity)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = Vec::new();
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = criterion();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => report_line(&format!("criterion {:>2} PASS {name} ({secs:.1}s): {detail}", i + 1)),
            Err(detail) => {
                report_line(&format!("criterion {:>2} FAIL {name} ({secs:.1}s): {detail}", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}

#[test]
fn shipped_sphere_ispace_is_the_restricted_sphere() {
    let catalog = shipped_catalog();
    let shipped = read_ispace(&data_dir().join("sphere-ispace.json")).unwrap();
    let restricted = restrict_global(&global_sphere(&catalog).unwrap()).unwrap();
    assert_eq!(shipped.values(), restricted.values());
    for n in 0..=catalog.dim_cap() {
        for t in 0..equicat::algebra::hyperoctahedral(n).len() {
            assert_eq!(shipped.morphism(n, t), restricted.morphism(n, t));
        }
    }
}
