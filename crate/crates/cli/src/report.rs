//! Serialized analysis reports.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use brimlab_core::{BRReport, GradedRing, Poly, SpreadReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format '{s}' (expected text, json or csv)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingInfo {
    pub p: u64,
    pub vars: Vec<String>,
    pub ideal: Vec<String>,
    pub dim: usize,
}

impl RingInfo {
    pub fn of(ring: &GradedRing) -> Self {
        Self {
            p: ring.field().modulus(),
            vars: ring.vars().to_vec(),
            ideal: ring
                .ideal_gens()
                .iter()
                .map(|g| ring.display_poly(g))
                .collect(),
            dim: ring.dim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleInfo {
    pub r: usize,
    pub n: usize,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lengths {
    #[serde(rename = "F_mod_N")]
    pub f_mod_n: u64,
    #[serde(rename = "A_mod_IN")]
    pub a_mod_in: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaRow {
    pub n: usize,
    pub lambda: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicity {
    pub e0: i64,
    pub coefficients: Vec<i64>,
    pub lambda_table: Vec<LambdaRow>,
    pub stable_from: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerT {
    pub t: i64,
    pub ranks: Vec<usize>,
    #[serde(rename = "H_lengths")]
    pub h_lengths: Vec<u64>,
    pub chi_q: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chi {
    pub per_t: Vec<PerT>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictsOut {
    pub parameter_module: bool,
    pub min_generators: Option<usize>,
    pub expected_generators: usize,
    pub inside_maximal_ideal: bool,
    pub complexes_ok: bool,
    pub annihilation_ok: bool,
    pub chi_nonnegative: bool,
    pub chi0_t_independent: bool,
    pub chi0_expected: bool,
    pub h0_t1_is_colength: bool,
    pub h0_t0_is_fitting_colength: bool,
    pub colength_ge_e: Option<bool>,
    pub fitting_colength_ge_e: Option<bool>,
    pub h0_ge_e: Option<bool>,
    pub colength_eq_e: Option<bool>,
    pub fitting_colength_eq_e: Option<bool>,
    pub failures: Vec<String>,
    pub all_hold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TelemetryOut {
    pub elapsed_ms: u64,
    pub gb_pairs: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub ring: RingInfo,
    pub module: ModuleInfo,
    pub lengths: Lengths,
    pub multiplicity: Multiplicity,
    pub chi: Chi,
    pub verdicts: VerdictsOut,
    pub telemetry: TelemetryOut,
}

fn show(ring: &GradedRing, p: &Poly) -> String {
    ring.display_poly(p)
}

impl Report {
    pub fn from_core(rep: &BRReport, rows: &[Vec<Poly>], elapsed_ms: u64) -> Self {
        let ring = &rep.ring;
        let v = &rep.verdicts;
        Report {
            ring: RingInfo::of(ring),
            module: ModuleInfo {
                r: rep.r,
                n: rep.n,
                matrix: rows
                    .iter()
                    .map(|r| r.iter().map(|p| show(ring, p)).collect())
                    .collect(),
            },
            lengths: Lengths {
                f_mod_n: rep.colength,
                a_mod_in: rep.fitting_colength,
            },
            multiplicity: Multiplicity {
                e0: rep.e0,
                coefficients: rep.coefficients.clone(),
                lambda_table: rep
                    .table
                    .values
                    .iter()
                    .enumerate()
                    .map(|(i, &lambda)| LambdaRow { n: i + 1, lambda })
                    .collect(),
                stable_from: rep.table.stable_from,
            },
            chi: Chi {
                per_t: rep
                    .slices
                    .iter()
                    .map(|s| PerT {
                        t: s.t,
                        ranks: s.ranks.clone(),
                        h_lengths: s.euler.lengths.clone(),
                        chi_q: s.euler.chis.clone(),
                    })
                    .collect(),
            },
            verdicts: VerdictsOut {
                parameter_module: v.parameter_module,
                min_generators: rep.parameter.min_generators,
                expected_generators: rep.parameter.expected_generators,
                inside_maximal_ideal: rep.parameter.inside_max,
                complexes_ok: v.complexes_ok,
                annihilation_ok: v.annihilation_ok,
                chi_nonnegative: v.chi_nonnegative,
                chi0_t_independent: v.chi0_t_independent,
                chi0_expected: v.chi0_expected,
                h0_t1_is_colength: v.h0_t1_is_colength,
                h0_t0_is_fitting_colength: v.h0_t0_is_fitting_colength,
                colength_ge_e: v.colength_ge_e,
                fitting_colength_ge_e: v.fitting_colength_ge_e,
                h0_ge_e: v.h0_ge_e,
                colength_eq_e: v.colength_eq_e,
                fitting_colength_eq_e: v.fitting_colength_eq_e,
                failures: v.failures().into_iter().map(String::from).collect(),
                all_hold: v.all_hold(),
            },
            telemetry: TelemetryOut {
                elapsed_ms,
                gb_pairs: ring.telemetry().pairs(),
            },
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    pub const CSV_HEADER: &'static str =
        "p,vars,ideal,r,n,dim,F_mod_N,A_mod_IN,e0,coefficients,chi0,parameter_module,all_hold,gb_pairs";

    fn to_csv(&self) -> String {
        let quote = |s: String| {
            if s.contains(',') {
                format!("\"{s}\"")
            } else {
                s
            }
        };
        let chi0 = self
            .chi
            .per_t
            .first()
            .and_then(|p| p.chi_q.first())
            .copied()
            .unwrap_or(0);
        let row = [
            self.ring.p.to_string(),
            self.ring.vars.join(" "),
            self.ring.ideal.join("; "),
            self.module.r.to_string(),
            self.module.n.to_string(),
            self.ring.dim.to_string(),
            self.lengths.f_mod_n.to_string(),
            self.lengths.a_mod_in.to_string(),
            self.multiplicity.e0.to_string(),
            self.multiplicity
                .coefficients
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(" "),
            chi0.to_string(),
            self.verdicts.parameter_module.to_string(),
            self.verdicts.all_hold.to_string(),
            self.telemetry.gb_pairs.to_string(),
        ]
        .map(quote)
        .join(",");
        format!("{}\n{row}\n", Self::CSV_HEADER)
    }

    fn to_text(&self) -> String {
        let mut s = String::new();
        let ideal = if self.ring.ideal.is_empty() {
            "0".to_string()
        } else {
            self.ring.ideal.join(", ")
        };
        let _ = writeln!(
            s,
            "ring      F_{}[{}] / ({ideal}), dim {}",
            self.ring.p,
            self.ring.vars.join(", "),
            self.ring.dim
        );
        let rows: Vec<String> = self
            .module
            .matrix
            .iter()
            .map(|r| format!("[{}]", r.join(", ")))
            .collect();
        let _ = writeln!(
            s,
            "module    r = {}, n = {}, matrix [{}]",
            self.module.r,
            self.module.n,
            rows.join(", ")
        );
        let v = &self.verdicts;
        let mu = v.min_generators.map_or("-".to_string(), |m| m.to_string());
        if v.parameter_module {
            let _ = writeln!(s, "          parameter module (mu = {mu})");
        } else {
            let _ = writeln!(
                s,
                "          not a parameter module (mu = {mu}, n = {}, expected {}{})",
                self.module.n,
                v.expected_generators,
                if v.inside_maximal_ideal {
                    ""
                } else {
                    ", not inside mF"
                }
            );
        }
        let _ = writeln!(s, "l(F/N)    {}", self.lengths.f_mod_n);
        let _ = writeln!(s, "l(A/I(N)) {}", self.lengths.a_mod_in);
        let _ = writeln!(s, "e(F/N)    {}", self.multiplicity.e0);
        let coeffs: Vec<String> = self
            .multiplicity
            .coefficients
            .iter()
            .map(i64::to_string)
            .collect();
        let _ = writeln!(s, "e_i       ({})", coeffs.join(", "));
        let lam: Vec<String> = self
            .multiplicity
            .lambda_table
            .iter()
            .map(|r| r.lambda.to_string())
            .collect();
        let _ = writeln!(
            s,
            "lambda    {} (polynomial from n = {})",
            lam.join(" "),
            self.multiplicity.stable_from
        );
        for p in &self.chi.per_t {
            let h: Vec<String> = p.h_lengths.iter().map(u64::to_string).collect();
            let c: Vec<String> = p.chi_q.iter().map(i64::to_string).collect();
            let _ = writeln!(
                s,
                "t = {:>2}    ranks {:?}  H [{}]  chi [{}]",
                p.t,
                p.ranks,
                h.join(" "),
                c.join(" ")
            );
        }
        let flag = |b: Option<bool>| match b {
            Some(true) => "yes",
            Some(false) => "no",
            None => "skipped",
        };
        let _ = writeln!(s, "checks    d^2 = 0: {}, annihilation: {}, chi >= 0: {}, chi0 t-independent: {}, chi0 expected: {}",
            flag(Some(v.complexes_ok)), flag(Some(v.annihilation_ok)), flag(Some(v.chi_nonnegative)),
            flag(Some(v.chi0_t_independent)), flag(Some(v.chi0_expected)));
        let _ = writeln!(
            s,
            "          H0(1) = l(F/N): {}, H0(0) = l(A/I(N)): {}",
            flag(Some(v.h0_t1_is_colength)),
            flag(Some(v.h0_t0_is_fitting_colength))
        );
        let _ = writeln!(
            s,
            "          l(F/N) >= e: {}, l(A/I(N)) >= e: {}, H0 >= e: {}",
            flag(v.colength_ge_e),
            flag(v.fitting_colength_ge_e),
            flag(v.h0_ge_e)
        );
        let _ = writeln!(
            s,
            "          l(F/N) = e: {}, l(A/I(N)) = e: {}",
            flag(v.colength_eq_e),
            flag(v.fitting_colength_eq_e)
        );
        let _ = writeln!(
            s,
            "result    {}",
            if v.all_hold {
                "all checks hold".to_string()
            } else {
                format!("FAILED: {}", v.failures.join(", "))
            }
        );
        let _ = writeln!(
            s,
            "telemetry {} ms, {} S-pairs",
            self.telemetry.elapsed_ms, self.telemetry.gb_pairs
        );
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadSampleOut {
    pub matrix: Vec<Vec<String>>,
    pub colength: u64,
    pub e0: i64,
    pub difference: i64,
    pub attempts: usize,
}

/// Exploratory output; carries no timing so equal seeds give equal bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpreadOut {
    pub ring: RingInfo,
    pub r: usize,
    pub columns: usize,
    pub seed: u64,
    pub degree: u32,
    pub samples: Vec<SpreadSampleOut>,
    pub histogram: BTreeMap<i64, usize>,
    pub distinct: Vec<i64>,
}

impl SpreadOut {
    pub fn from_core(ring: &GradedRing, rep: &SpreadReport, seed: u64, degree: u32) -> Self {
        let histogram = rep.histogram();
        Self {
            ring: RingInfo::of(ring),
            r: rep.r,
            columns: rep.columns,
            seed,
            degree,
            samples: rep
                .samples
                .iter()
                .map(|s| SpreadSampleOut {
                    matrix: s
                        .matrix
                        .iter()
                        .map(|r| r.iter().map(|p| show(ring, p)).collect())
                        .collect(),
                    colength: s.colength,
                    e0: s.e0,
                    difference: s.difference(),
                    attempts: s.attempts,
                })
                .collect(),
            distinct: histogram.keys().copied().collect(),
            histogram,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => {
                let mut s = String::from("sample,colength,e0,difference,attempts\n");
                for (i, x) in self.samples.iter().enumerate() {
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{}",
                        i + 1,
                        x.colength,
                        x.e0,
                        x.difference,
                        x.attempts
                    );
                }
                s
            }
            Format::Text => {
                let mut s = String::new();
                let ideal = if self.ring.ideal.is_empty() {
                    "0".to_string()
                } else {
                    self.ring.ideal.join(", ")
                };
                let _ = writeln!(
                    s,
                    "ring      F_{}[{}] / ({ideal}), dim {}",
                    self.ring.p,
                    self.ring.vars.join(", "),
                    self.ring.dim
                );
                let _ = writeln!(
                    s,
                    "sampling  {} random {} x {} matrices of degree-{} forms, seed {}",
                    self.samples.len(),
                    self.r,
                    self.columns,
                    self.degree,
                    self.seed
                );
                let _ = writeln!(s, "l(F/N) - e(F/N):");
                for (d, c) in &self.histogram {
                    let _ = writeln!(s, "  {d:>4}  x{c}");
                }
                let distinct: Vec<String> = self.distinct.iter().map(i64::to_string).collect();
                let _ = writeln!(s, "distinct  {{{}}}", distinct.join(", "));
                s
            }
        }
    }
}
