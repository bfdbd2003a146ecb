use crate::rational::Rational;
use crate::region::{Region, Rsta};
use crate::ta::{Guard, Relation, TimedAutomaton};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("grid step must be a positive rational with small numerator and denominator")]
    BadStep,
    #[error("duration {0} is not a multiple of the grid step")]
    NotMultiple(String),
    #[error("initial clock values are not multiples of the grid step")]
    InitialOffGrid,
}

/// A positive time step `num/den`; dates and clock values are counted in steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub num: u64,
    pub den: u64,
}

impl Step {
    pub fn new(step: &Rational) -> Result<Step, GridError> {
        if *step <= Rational::zero() {
            return Err(GridError::BadStep);
        }
        let num = step.numer().to_u64().ok_or(GridError::BadStep)?;
        let den = step.denom().to_u64().ok_or(GridError::BadStep)?;
        if num > 1 << 20 || den > 1 << 20 {
            return Err(GridError::BadStep);
        }
        Ok(Step { num, den })
    }

    pub fn rational(&self) -> Rational {
        Rational::new(self.num.into(), self.den.into())
    }

    /// `floor(t / step)`.
    pub fn ticks_floor(&self, t: &Rational) -> u64 {
        (t / self.rational()).floor().to_integer().to_u64().unwrap_or(0)
    }

    /// `t / step` when integral.
    pub fn ticks_exact(&self, t: &Rational) -> Option<u64> {
        let q = t / self.rational();
        q.is_integer().then(|| q.to_integer().to_u64()).flatten()
    }

    pub fn date(&self, ticks: u64) -> Rational {
        self.rational() * Rational::from_integer(ticks.into())
    }
}

#[derive(Debug, Clone)]
enum Check {
    Constraints(Vec<(usize, Relation, u32)>),
    Region(Region),
}

#[derive(Debug, Clone)]
struct GridEdge {
    dst: u32,
    letter: u16,
    check: Check,
    resets: Vec<usize>,
}

#[derive(Debug, Clone)]
enum Final {
    Never,
    Always,
    When(Guard),
}

/// A timed automaton restricted to dates on a grid: clocks count grid steps and saturate just
/// above the maximal constant, where every guard is decided.
#[derive(Debug, Clone)]
pub struct GridSystem {
    pub alphabet: Vec<String>,
    clocks: usize,
    max_constant: u32,
    step: Step,
    saturation: u32,
    outgoing: Vec<Vec<GridEdge>>,
    finals: Vec<Final>,
    initial: Option<(u32, Vec<u32>)>,
}

/// A configuration: location followed by clock values in steps.
pub type Config = Box<[u32]>;

impl GridSystem {
    fn build(
        alphabet: Vec<String>,
        clocks: usize,
        max_constant: u32,
        step: Step,
        outgoing: Vec<Vec<GridEdge>>,
        finals: Vec<Final>,
        initial: Option<(usize, &[u32])>,
    ) -> Result<GridSystem, GridError> {
        let saturation = (max_constant as u64 * step.den / step.num + 1) as u32;
        let initial = match initial {
            None => None,
            Some((q, v)) => {
                let mut ticks = Vec::with_capacity(v.len());
                for &c in v {
                    let t = step.ticks_exact(&Rational::from_integer(c.into())).ok_or(GridError::InitialOffGrid)?;
                    ticks.push((t as u32).min(saturation));
                }
                Some((q as u32, ticks))
            }
        };
        Ok(GridSystem { alphabet, clocks, max_constant, step, saturation, outgoing, finals, initial })
    }

    pub fn from_automaton(a: &TimedAutomaton, step: &Rational) -> Result<GridSystem, GridError> {
        let step = Step::new(step)?;
        let mut outgoing = vec![Vec::new(); a.locations.len()];
        for e in &a.edges {
            let cs = e.guard.constraints.iter().map(|c| (c.clock, c.relation, c.bound)).collect();
            outgoing[e.src].push(GridEdge {
                dst: e.dst as u32,
                letter: e.label as u16,
                check: Check::Constraints(cs),
                resets: e.resets.clone(),
            });
        }
        let finals = a
            .locations
            .iter()
            .map(|l| match &l.accepting {
                None => Final::Never,
                Some(g) if g.constraints.is_empty() => Final::Always,
                Some(g) => Final::When(g.clone()),
            })
            .collect();
        let init = a.initial_locations();
        let initial = match init.as_slice() {
            [q] => Some((*q, a.locations[*q].initial.as_deref().unwrap())),
            _ => None,
        };
        GridSystem::build(a.alphabet.clone(), a.num_clocks(), a.max_constant, step, outgoing, finals, initial)
    }

    pub fn from_rsta(r: &Rsta, step: &Rational) -> Result<GridSystem, GridError> {
        let step = Step::new(step)?;
        let mut outgoing = vec![Vec::new(); r.locations.len()];
        for e in &r.edges {
            outgoing[e.src].push(GridEdge {
                dst: e.dst as u32,
                letter: e.label as u16,
                check: Check::Region(e.guard.clone()),
                resets: e.resets.clone(),
            });
        }
        let finals = r.locations.iter().map(|l| if l.accepting { Final::Always } else { Final::Never }).collect();
        let initial = r.initial.map(|q| (q, r.initial_vector.as_slice()));
        GridSystem::build(r.alphabet.clone(), r.num_clocks(), r.max_constant, step, outgoing, finals, initial)
    }

    pub fn step(&self) -> Step {
        self.step
    }

    pub fn max_constant(&self) -> u32 {
        self.max_constant
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn initial(&self) -> Option<Config> {
        self.initial.as_ref().map(|(q, v)| std::iter::once(*q).chain(v.iter().copied()).collect())
    }

    fn holds(&self, check: &Check, clocks: &[u32]) -> bool {
        match check {
            Check::Constraints(cs) => cs.iter().all(|&(c, rel, b)| {
                let lhs = clocks[c] as u128 * self.step.num as u128;
                let rhs = b as u128 * self.step.den as u128;
                match rel {
                    Relation::Lt => lhs < rhs,
                    Relation::Le => lhs <= rhs,
                    Relation::Gt => lhs > rhs,
                    Relation::Ge => lhs >= rhs,
                }
            }),
            Check::Region(r) => {
                let v: Vec<u64> = clocks.iter().map(|&c| c as u64).collect();
                r.contains_scaled(&v, self.step.num, self.step.den)
            }
        }
    }

    pub fn is_final(&self, config: &[u32]) -> bool {
        match &self.finals[config[0] as usize] {
            Final::Never => false,
            Final::Always => true,
            Final::When(g) => self.holds(
                &Check::Constraints(g.constraints.iter().map(|c| (c.clock, c.relation, c.bound)).collect()),
                &config[1..],
            ),
        }
    }

    /// Delays by `ticks` steps.
    pub fn delay(&self, config: &[u32], ticks: u32) -> Config {
        let mut out: Config = config.into();
        for c in out[1..].iter_mut() {
            *c = c.saturating_add(ticks).min(self.saturation);
        }
        out
    }

    /// Zero-delay successors: `(letter, next configuration)`.
    pub fn fire(&self, config: &[u32]) -> impl Iterator<Item = (u16, Config)> + '_ {
        let clocks: Vec<u32> = config[1..].to_vec();
        let loc = config[0] as usize;
        let ok: Vec<bool> = self.outgoing[loc].iter().map(|e| self.holds(&e.check, &clocks)).collect();
        self.outgoing[loc].iter().zip(ok).filter(|(_, ok)| *ok).map(move |(e, _)| {
            let mut next: Vec<u32> = Vec::with_capacity(self.clocks + 1);
            next.push(e.dst);
            next.extend_from_slice(&clocks);
            for &r in &e.resets {
                next[r + 1] = 0;
            }
            (e.letter, next.into_boxed_slice())
        })
    }

    /// Whether `1` divides into whole steps (integer dates are on the grid).
    pub fn integers_on_grid(&self) -> bool {
        self.step.ticks_exact(&Rational::one()).is_some()
    }
}
