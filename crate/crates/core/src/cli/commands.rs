//! The experiment commands and their reports.

use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use super::{CliError, Instance, InstanceSpec, VIOLATION_EXIT};
use crate::artin_rees::strong_ar_exponent;
use crate::asymptotics::{check_equivalences, ext_length_table, psi_report, psi_superficial_descent, psi_under_modx};
use crate::blowup::{
    assoc_graded, end_h0_via_power, find_superficial, local_cohomology_ends, reg_syzygy_sweep, superficial_window,
    sweep_hypotheses,
};
use crate::operators::{
    complexity, eisenbud_operators, ideal_varieties, support_variety, variety_mod_linear, VarietyIdeal,
};
use crate::resolve::{depth, is_mcm, mcm_approx, minimal_resolution, projective_dimension, reduce_complexity, Module};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Resolve,
    ExtTable,
    Psi,
    Variety,
    Equivalences,
    RegSweep,
    ArtinRees,
    Approx,
    ReduceCx,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Resolve,
        Command::ExtTable,
        Command::Psi,
        Command::Variety,
        Command::Equivalences,
        Command::RegSweep,
        Command::ArtinRees,
        Command::Approx,
        Command::ReduceCx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Resolve => "resolve",
            Command::ExtTable => "ext-table",
            Command::Psi => "psi",
            Command::Variety => "variety",
            Command::Equivalences => "equivalences",
            Command::RegSweep => "reg-sweep",
            Command::ArtinRees => "artin-rees",
            Command::Approx => "approx",
            Command::ReduceCx => "reduce-cx",
        }
    }
}

/// A report, its CSV tables and any failed theorem checks.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: Command,
    pub report: Value,
    /// `(file name, contents)`.
    pub tables: Vec<(String, String)>,
    pub alarms: Vec<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.alarms.is_empty() {
            0
        } else {
            VIOLATION_EXIT
        }
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Writes `<command>.json` and the CSV tables into `dir`.
    pub fn write_to(&self, dir: &Path) -> std::io::Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("{}.json", self.command.name())), self.json_text())?;
        for (name, text) in &self.tables {
            std::fs::write(dir.join(name), text)?;
        }
        Ok(())
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn variety_json(v: &VarietyIdeal) -> Value {
    json!({
        "gens": v.fmt_gens(),
        "dim": v.dim,
        "inconclusive": v.inconclusive,
        "stabilization": v.stabilization,
    })
}

fn degrees_csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = format!("{}\n", header);
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

struct Report {
    body: Value,
    tables: Vec<(String, String)>,
    alarms: Vec<String>,
}

impl Report {
    fn new(body: Value) -> Self {
        Report {
            body,
            tables: Vec::new(),
            alarms: Vec::new(),
        }
    }

    fn alarm_unless(&mut self, ok: bool, what: &str) {
        if !ok {
            self.alarms.push(what.to_string());
        }
    }
}

/// Runs `command` on `spec`. The result depends only on the inputs and
/// `seed`, not on the number of worker threads.
pub fn run(command: Command, spec: &InstanceSpec, seed: u64) -> Result<Outcome, CliError> {
    let inst = Instance::build(spec)?;
    let report = match command {
        Command::Resolve => resolve(&inst)?,
        Command::ExtTable => ext_table(&inst)?,
        Command::Psi => psi(&inst)?,
        Command::Variety => variety(&inst)?,
        Command::Equivalences => equivalences(&inst)?,
        Command::RegSweep => reg_sweep(&inst, seed)?,
        Command::ArtinRees => artin_rees(&inst)?,
        Command::Approx => approx(&inst)?,
        Command::ReduceCx => reduce_cx(&inst, seed)?,
    };
    let p = &spec.params;
    let provenance = json!({
        "command": command.name(),
        "characteristic": spec.ring.characteristic,
        "seed": seed,
        "windows": {
            "i_max": p.i_max,
            "n_max": p.n_max,
            "burn_n": p.burn_n,
            "burn_i": p.burn_i,
            "cutoff": p.cutoff,
        },
        "versions": { "cicalc": env!("CARGO_PKG_VERSION") },
        "instance": to_value(spec),
    });
    let mut body = report.body;
    body["provenance"] = provenance;
    body["alarms"] = to_value(&report.alarms);
    Ok(Outcome {
        command,
        report: body,
        tables: report.tables,
        alarms: report.alarms,
    })
}

fn resolve(inst: &Instance) -> Result<Report, CliError> {
    let m = &inst.module;
    let res = minimal_resolution(m, inst.spec.params.cutoff);
    let ops = eisenbud_operators(&res);
    let graded: Vec<Value> = res
        .graded_betti()
        .iter()
        .map(|&(i, d, n)| json!({ "i": i, "degree": d, "count": n }))
        .collect();
    let lift = ops.lift_identity_holds();
    let commute = ops.commutes_with_differential();
    let mut r = Report::new(json!({
        "betti": res.betti(),
        "graded_betti": graded,
        "depth": depth(m),
        "mcm": is_mcm(m),
        "projective_dimension": projective_dimension(m),
        "exact": res.is_exact(),
        "operator_identities": { "lift": lift, "commute": commute },
    }));
    r.tables.push((
        "betti.csv".into(),
        degrees_csv("i,degree,count", res.graded_betti().iter().map(|(i, d, n)| format!("{},{},{}", i, d, n))),
    ));
    r.alarm_unless(res.is_exact(), "resolution is not exact");
    r.alarm_unless(lift, "operator lift identity fails");
    r.alarm_unless(commute, "operators do not commute with the differential");
    Ok(r)
}

fn ext_table(inst: &Instance) -> Result<Report, CliError> {
    let p = &inst.spec.params;
    let table = ext_length_table(&inst.module, &inst.ideal, p.i_max, p.n_max)?;
    let mut r = Report::new(json!({ "table": table.cells, "zero": table.is_zero() }));
    r.tables.push(("ext_table.csv".into(), table.to_csv()));
    Ok(r)
}

fn psi(inst: &Instance) -> Result<Report, CliError> {
    let p = &inst.spec.params;
    let table = ext_length_table(&inst.module, &inst.ideal, p.i_max, p.n_max)?;
    let rep = psi_report(&table, p.windows())?;
    let mut r = Report::new(to_value(&rep));
    r.alarm_unless(!rep.violation(), "psi is not eventually constant on even or odd indices");
    r.tables.push(("ext_table.csv".into(), table.to_csv()));
    Ok(r)
}

fn variety(inst: &Instance) -> Result<Report, CliError> {
    let p = &inst.spec.params;
    let w = p.variety();
    let m = &inst.module;
    let cx = complexity(m, w);
    let iv = ideal_varieties(&inst.ideal, p.power_max, w);
    let syz = support_variety(&crate::resolve::syzygy(m, 1), None, w);
    let mut body = json!({
        "module": variety_json(&cx.variety),
        "complexity": {
            "variety_dim": cx.variety_dim,
            "betti_estimate": cx.betti_estimate,
            "betti": cx.betti,
            "agree": cx.agree,
        },
        "first_syzygy_same_variety": syz.same_radical(&cx.variety),
        "ideal": {
            "per_power": iv.per_power.iter().map(variety_json).collect::<Vec<_>>(),
            "stable": variety_json(&iv.stable),
            "index": iv.index,
            "short_window": iv.short_window,
            "total": variety_json(&iv.total),
        },
    });
    let mod_x = {
        let x = inst.element()?;
        match variety_mod_linear(m, &x, w) {
        Ok((before, after)) => Some(json!({
            "element": x.fmt(inst.ring.ring()),
            "quotient": variety_json(&after),
            "same_radical": before.same_radical(&after),
        })),
        Err(_) => None,
    }
    };
    let invariant = mod_x.as_ref().is_none_or(|v| v["same_radical"] == json!(true));
    body["mod_linear"] = mod_x.unwrap_or(Value::Null);
    let mut r = Report::new(body);
    r.alarm_unless(cx.agree, "variety dimension and Betti growth disagree");
    r.alarm_unless(syz.same_radical(&cx.variety), "first syzygy has a different support variety");
    r.alarm_unless(invariant, "support variety changes modulo a regular linear form");
    Ok(r)
}

fn equivalences(inst: &Instance) -> Result<Report, CliError> {
    let eq = check_equivalences(&inst.module, &inst.ideal, inst.spec.params.equivalence_options())?;
    let mut r = Report::new(to_value(&eq));
    r.body["agree"] = json!(eq.agree());
    r.alarm_unless(eq.agree(), "the equivalent conditions disagree");
    Ok(r)
}

fn reg_sweep(inst: &Instance, seed: u64) -> Result<Report, CliError> {
    let p = &inst.spec.params;
    let m = &inst.module;
    let sweep = reg_syzygy_sweep(m, &inst.ideal, p.sweep_max)?;
    let hypotheses = if is_mcm(m) {
        Some(sweep_hypotheses(m, &inst.ideal, p.equivalence_options())?)
    } else {
        None
    };
    let g = assoc_graded(m, &inst.ideal)?;
    let cech = local_cohomology_ends(&g, p.margin)?;
    let betti_reg = g.regularity();
    let ambient_reg = g.ambient_regularity();
    let paths_agree = cech.reg == betti_reg && ambient_reg.is_none_or(|a| a == betti_reg);
    let power_bound = if inst.ring.dim() >= 2 {
        let window = superficial_window(&inst.ideal, std::slice::from_ref(m), p.h0_n_max)?;
        let sup = find_superficial(&inst.ideal, std::slice::from_ref(m), window, seed)?;
        let bound = end_h0_via_power(m, &inst.ideal, &sup.element, p.h0_n_max)?;
        Some((sup, bound))
    } else {
        None
    };
    let mut r = Report::new(json!({
        "sweep": to_value(&sweep),
        "hypotheses": hypotheses.as_ref().map(to_value),
        "regularity": {
            "betti": betti_reg,
            "cech": to_value(&cech),
            "ambient": ambient_reg,
            "agree": paths_agree,
        },
        "power_bound": power_bound.as_ref().map(|(sup, bound)| json!({
            "superficial": sup.element.fmt(inst.ring.ring()),
            "attempts": to_value(&sup.transcript),
            "bound": to_value(bound),
        })),
    }));
    r.tables.push(("cohomology.csv".into(), cech.to_csv()));
    r.tables.push((
        "sweep.csv".into(),
        degrees_csv("i,reg", sweep.regs.iter().enumerate().map(|(i, d)| format!("{},{}", i, d))),
    ));
    let hyp = hypotheses.as_ref().is_some_and(|h| h.any());
    r.alarm_unless(!hyp || sweep.bounded, "regularity sweep is not bounded although a hypothesis holds");
    r.alarm_unless(paths_agree, "regularity paths disagree");
    if let Some((_, bound)) = &power_bound {
        r.alarm_unless(bound.holds, "closure end exceeds the power-ideal bound");
    }
    Ok(r)
}

fn artin_rees(inst: &Instance) -> Result<Report, CliError> {
    let p = &inst.spec.params;
    let rep = strong_ar_exponent(&inst.module, &inst.ideal, p.ar_levels, p.ar_n_max)?;
    let mut r = Report::new(to_value(&rep));
    r.alarm_unless(rep.verified(), "Artin-Rees equality fails by double inclusion");
    r.alarm_unless(rep.within_reg_bounds(), "Artin-Rees exponent exceeds reg + 1");
    Ok(r)
}

fn approx(inst: &Instance) -> Result<Report, CliError> {
    let p = &inst.spec.params;
    let x = inst.element()?;
    let m = &inst.module;
    let a = mcm_approx(m, std::slice::from_ref(&x))?;
    let w = p.windows();
    let modx = psi_under_modx(m, &inst.ideal, &x, w)?;
    let descent = psi_superficial_descent(m, &inst.ideal, &x, w)?;
    let cutoff = p.cutoff;
    let betti = |n: &Module| minimal_resolution(n, cutoff).betti();
    let mut r = Report::new(json!({
        "element": x.fmt(inst.ring.ring()),
        "approximation": {
            "degrees": a.approximation.degrees(),
            "betti": betti(&a.approximation),
            "depth": a.depth,
        },
        "kernel_betti": betti(&a.kernel),
        "surjective": a.surjective,
        "kernel_finite_pd": a.kernel_finite_pd,
        "psi_formula": to_value(&modx),
        "descent": to_value(&descent),
    }));
    r.alarm_unless(a.surjective && a.kernel_finite_pd, "approximation sequence is not as required");
    r.alarm_unless(a.depth == inst.ring.dim(), "approximation is not maximal Cohen-Macaulay");
    r.alarm_unless(modx.holds(), "psi formula modulo x fails");
    Ok(r)
}

fn reduce_cx(inst: &Instance, seed: u64) -> Result<Report, CliError> {
    let c = reduce_complexity(&inst.module, inst.spec.params.variety(), seed)?;
    let drops = c.kernel_complexity + 1 == c.original_complexity;
    let mut r = Report::new(json!({
        "start": c.start,
        "seed": c.seed,
        "seeds_tried": c.seeds_tried,
        "coefficients": c.coefficients,
        "kernel_betti": c.kernel_betti,
        "expected_betti": c.expected_betti,
        "original_complexity": c.original_complexity,
        "kernel_complexity": c.kernel_complexity,
        "syzygy_compatible": c.syzygy_compatible,
        "betti_match": c.betti_match(),
    }));
    r.alarm_unless(c.betti_match(), "kernel Betti numbers differ from b_(i+2) - b_i");
    r.alarm_unless(drops, "complexity does not drop by one");
    r.alarm_unless(c.syzygy_compatible, "kernel syzygies are not compatible");
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::Degree;
    use crate::cli::fixtures;

    #[test]
    fn psi_and_equivalences_on_a1() {
        let out = run(Command::Psi, &fixtures::spec("a1-m1-maximal").unwrap(), 0).unwrap();
        assert_eq!(out.report["r"], to_value(&Degree::Finite(0)));
        assert_eq!(out.exit_code(), 0);
        let out = run(Command::Equivalences, &fixtures::spec("a1-m1-parameter").unwrap(), 0).unwrap();
        for key in ["r_is_neg_inf", "eventual_row_vanishing", "uniform_vanishing", "varieties_meet_at_origin", "tor_vanishing"] {
            assert_eq!(out.report[key], json!(true), "{}", key);
        }
    }

    #[test]
    fn sweep_of_free_module_is_constant() {
        let out = run(Command::RegSweep, &fixtures::spec("a1-free-maximal").unwrap(), 0).unwrap();
        let regs = out.report["sweep"]["regs"].as_array().unwrap();
        assert_eq!(regs[0], json!(1));
        assert!(regs[1..].iter().all(|r| r == "-inf"));
        assert!(out.alarms.is_empty(), "{:?}", out.alarms);
    }

    #[test]
    fn outputs_are_written() {
        let dir = std::env::temp_dir().join(format!("cicalc-cli-{}", std::process::id()));
        let out = run(Command::ExtTable, &fixtures::spec("a1-m1-parameter").unwrap(), 0).unwrap();
        out.write_to(&dir).unwrap();
        let csv = std::fs::read_to_string(dir.join("ext_table.csv")).unwrap();
        assert!(csv.starts_with("i\\n,1,"));
        assert!(!csv.contains('\r'));
        let json = std::fs::read_to_string(dir.join("ext-table.json")).unwrap();
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["zero"], json!(true));
        std::fs::remove_dir_all(dir).unwrap();
    }
}
