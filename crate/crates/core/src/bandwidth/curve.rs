use super::count::{count_point_signatures, count_signatures, log2_big};
use super::enumerate::{enumerate_words, EnumError, Limits};
use super::system::{GridError, GridSystem, Step};
use crate::classify::Class;
use crate::rational::{format_rational, int, to_f64, Rational};
use crate::ta::TimedAutomaton;
use crate::words::{greedy_net, greedy_separated};
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

/// Greedy bounds on an explicitly enumerated grid language.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub words: usize,
    /// `log₂` of a greedy ε-separated subset; `None` for an empty language.
    pub capacity_bits: Option<f64>,
    /// `log₂` of a greedy ε-net drawn from the language.
    pub entropy_bits: Option<f64>,
}

pub fn estimate_capacity(sys: &GridSystem, t: &Rational, eps: &Rational, limits: Limits) -> Result<Estimate, EnumError> {
    let words = enumerate_words(sys, t, limits)?;
    if words.is_empty() {
        return Ok(Estimate { words: 0, capacity_bits: None, entropy_bits: None });
    }
    let sep = greedy_separated(&words, eps);
    let net = greedy_net(&words, eps);
    Ok(Estimate {
        words: words.len(),
        capacity_bits: Some((sep.len() as f64).log2()),
        entropy_bits: Some((net.len() as f64).log2()),
    })
}

/// Lattices whose distinct point signatures are pairwise more than `eps` apart: the coarsest
/// `1/m > eps` (it contains the integers) and a few spacings just above `eps`.
pub fn capacity_lattices(eps: &Rational) -> Vec<Rational> {
    let inv = (Rational::one() / eps).ceil().to_integer().to_i64().unwrap_or(1);
    let m = (inv - 1).max(1);
    let mut out = vec![Rational::new(1.into(), m.into())];
    for j in 1..=3 {
        let s = eps * (Rational::one() + Rational::new(1.into(), (1i64 << j).into()));
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out.retain(|s| s > eps);
    out
}

/// Lower bound on `C_ε(L_T)` in bits: the best lattice signature count.
pub fn symbolic_capacity(a: &TimedAutomaton, t: &Rational, eps: &Rational) -> Result<Option<f64>, GridError> {
    let mut best: Option<f64> = None;
    for s in capacity_lattices(eps) {
        let sys = match GridSystem::from_automaton(a, &s) {
            Ok(sys) => sys,
            Err(GridError::InitialOffGrid) => continue,
            Err(e) => return Err(e),
        };
        let horizon = Step::new(&s)?.ticks_floor(t) as u32;
        if let Some(bits) = log2_big(&count_point_signatures(&sys, horizon)) {
            best = Some(best.map_or(bits, |b| b.max(bits)));
        }
    }
    Ok(best)
}

/// Upper estimate of `H_ε` of the grid-`g` language: slots of width `2ε` and their letter sets.
pub fn symbolic_entropy(a: &TimedAutomaton, t: &Rational, eps: &Rational, g: &Rational) -> Result<Option<f64>, GridError> {
    let width = (int(2) * eps / g).to_integer().to_u32().filter(|w| *w >= 1 && int(2) * eps == g * Rational::from_integer((*w).into()));
    let width = width.ok_or(GridError::BadStep)?;
    let sys = GridSystem::from_automaton(a, g)?;
    let horizon = Step::new(g)?.ticks_floor(t) as u32;
    Ok(log2_big(&count_signatures(&sys, horizon, width)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    #[serde(serialize_with = "ser_rational")]
    pub epsilon: Rational,
    #[serde(rename = "T", serialize_with = "ser_rational")]
    pub t: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub grid: Rational,
    pub capacity_bits: Option<f64>,
    pub entropy_bits: Option<f64>,
    pub bits_per_second: f64,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandwidthCurve {
    pub rows: Vec<CurveRow>,
    /// Whether entropy estimates were requested; otherwise the CSV column stays blank.
    #[serde(skip)]
    pub entropy: bool,
}

impl BandwidthCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epsilon,T,grid,capacity_bits,entropy_bits,bits_per_second\n");
        let f = |x: Option<f64>| x.map_or_else(|| "-inf".to_string(), |v| format!("{v:.6}"));
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.6}",
                format_rational(&r.epsilon),
                format_rational(&r.t),
                format_rational(&r.grid),
                f(r.capacity_bits),
                if self.entropy { f(r.entropy_bits) } else { String::new() },
                r.bits_per_second
            );
        }
        out
    }
}

/// Rows for every `(ε, T)`; the grid defaults to `ε/2`. Entropy estimates are optional
/// because they run on the finer grid.
pub fn bandwidth_curve(
    a: &TimedAutomaton,
    ts: &[Rational],
    epsilons: &[Rational],
    grid: Option<&Rational>,
    entropy: bool,
) -> Result<BandwidthCurve, GridError> {
    let jobs: Vec<(Rational, Rational)> =
        epsilons.iter().flat_map(|e| ts.iter().map(move |t| (e.clone(), t.clone()))).collect();
    let rows: Result<Vec<CurveRow>, GridError> = jobs
        .par_iter()
        .map(|(eps, t)| {
            let g = grid.cloned().unwrap_or_else(|| eps / int(2));
            let capacity_bits = symbolic_capacity(a, t, eps)?;
            let entropy_bits = if entropy { symbolic_entropy(a, t, eps, &g)? } else { None };
            let bits_per_second = capacity_bits.map_or(0.0, |c| c / to_f64(t));
            Ok(CurveRow { epsilon: eps.clone(), t: t.clone(), grid: g, capacity_bits, entropy_bits, bits_per_second })
        })
        .collect();
    Ok(BandwidthCurve { rows: rows?, entropy })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Model {
    #[serde(rename = "O(1)")]
    Constant,
    #[serde(rename = "Θ(log 1/ε)")]
    Logarithmic,
    #[serde(rename = "Θ(1/ε)")]
    Inverse,
}

impl Model {
    pub fn class(self) -> Class {
        match self {
            Model::Constant => Class::Meager,
            Model::Logarithmic => Class::Normal,
            Model::Inverse => Class::Obese,
        }
    }

    fn basis(self, eps: f64) -> f64 {
        match self {
            Model::Constant => 1.0,
            Model::Logarithmic => (1.0 / eps).log2(),
            Model::Inverse => 1.0 / eps,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FitError {
    #[error("need at least 3 values of ε, got {0}")]
    InsufficientPoints(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub model: Model,
    /// Coefficient of the chosen model; for the logarithmic model, bits per second per halving of ε.
    pub constant: f64,
    /// Least-squares residual per model; `None` marks an inadmissible (non-growing) fit.
    pub residuals: BTreeMap<String, Option<f64>>,
    /// Second-best residual over best; infinite when the best fit is exact.
    pub residual_ratio: f64,
    pub inconclusive: bool,
    /// `(ε, bits per second)` used for the fit.
    pub rates: Vec<(f64, f64)>,
}

const TINY: f64 = 1e-9;

/// Long-run rate per ε: the marginal rate between the two largest durations (the offset of
/// a finite transient cancels), or capacity/T with a single duration.
fn rates(curve: &BandwidthCurve) -> Vec<(f64, f64)> {
    let mut by_eps: BTreeMap<Rational, Vec<&CurveRow>> = BTreeMap::new();
    for r in &curve.rows {
        by_eps.entry(r.epsilon.clone()).or_default().push(r);
    }
    let mut out = Vec::new();
    for (eps, mut rows) in by_eps {
        rows.sort_by(|a, b| a.t.cmp(&b.t));
        let bits = |r: &CurveRow| r.capacity_bits.unwrap_or(0.0);
        let rate = match rows.as_slice() {
            [.., r1, r2] => (bits(r2) - bits(r1)) / (to_f64(&r2.t) - to_f64(&r1.t)),
            [r] => r.bits_per_second,
            [] => continue,
        };
        out.push((to_f64(&eps), if rate.abs() < TINY { 0.0 } else { rate }));
    }
    out
}

/// Least-squares fit of the long-run rates against `c`, `c·log₂(1/ε)` and `c/ε`.
pub fn fit_class(curve: &BandwidthCurve) -> Result<FitReport, FitError> {
    let rates = rates(curve);
    if rates.len() < 3 {
        return Err(FitError::InsufficientPoints(rates.len()));
    }
    let models = [Model::Constant, Model::Logarithmic, Model::Inverse];
    let fits: Vec<(Model, f64, Option<f64>)> = models
        .iter()
        .map(|&m| {
            let num: f64 = rates.iter().map(|(e, r)| r * m.basis(*e)).sum();
            let den: f64 = rates.iter().map(|(e, _)| m.basis(*e).powi(2)).sum();
            let c = num / den;
            let residual: f64 = rates.iter().map(|(e, r)| (r - c * m.basis(*e)).powi(2)).sum();
            let admissible = m == Model::Constant || c > TINY;
            (m, c, admissible.then_some(if residual < TINY { 0.0 } else { residual }))
        })
        .collect();
    let mut ranked: Vec<&(Model, f64, Option<f64>)> = fits.iter().filter(|f| f.2.is_some()).collect();
    ranked.sort_by(|a, b| a.2.unwrap().total_cmp(&b.2.unwrap()).then(a.0.cmp(&b.0)));
    let best = ranked[0];
    let ratio = match ranked.get(1) {
        None => f64::INFINITY,
        Some(second) if best.2.unwrap() == 0.0 => {
            if second.2.unwrap() == 0.0 {
                1.0
            } else {
                f64::INFINITY
            }
        }
        Some(second) => second.2.unwrap() / best.2.unwrap(),
    };
    let residuals = fits
        .iter()
        .map(|(m, _, r)| {
            let key = match m {
                Model::Constant => "constant",
                Model::Logarithmic => "logarithmic",
                Model::Inverse => "inverse",
            };
            (key.to_string(), *r)
        })
        .collect();
    Ok(FitReport {
        model: best.0,
        constant: best.1,
        residuals,
        residual_ratio: ratio,
        inconclusive: ratio < 2.0,
        rates,
    })
}
