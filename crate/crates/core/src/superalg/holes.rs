//! Physical 2D levels compared with the states reached by representations.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use serde::Serialize;

use super::reps::{PRange, RepSolution};
use super::System2D;
use crate::extensions::physical_spectrum;
use crate::ratpoly::Rational;
use crate::report::ser_rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    #[serde(serialize_with = "ser_rational")]
    pub energy: Rational,
    pub physical: Vec<(i64, i64)>,
    pub covered: Vec<(i64, i64)>,
    /// Physical states reached by no representation.
    pub uncovered: Vec<(i64, i64)>,
    pub physical_degeneracy: usize,
    pub algebraic_degeneracy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HoleReport {
    #[serde(serialize_with = "ser_rational")]
    pub e_max: Rational,
    pub levels: Vec<LevelReport>,
}

impl HoleReport {
    /// Levels with at least one uncovered state.
    pub fn holes(&self) -> impl Iterator<Item = &LevelReport> {
        self.levels.iter().filter(|l| !l.uncovered.is_empty())
    }

    pub fn level(&self, e: &Rational) -> Option<&LevelReport> {
        self.levels.iter().find(|l| &l.energy == e)
    }
}

/// Compare every physical level `E <= e_max` with the states of the given
/// representations; the physical state list is built by brute force from
/// the two axis spectra.
pub fn detect_holes(sys: &System2D, reps: &[RepSolution], e_max: &Rational) -> HoleReport {
    let levels = physical_spectrum(&sys.x_spectrum(), &sys.y_spectrum(), e_max);
    let total_states: usize = levels.iter().map(|l| l.degeneracy()).sum();
    let mut covered: BTreeMap<Rational, BTreeSet<(i64, i64)>> = BTreeMap::new();
    for rep in reps {
        let ps: Vec<u64> = match rep.p {
            PRange::Value(p) => vec![p],
            PRange::All if rep.energy.slope.is_positive() => (0..)
                .take_while(|&p| &rep.energy_at(p) <= e_max)
                .collect(),
            // a family cannot cover more states than exist below e_max
            PRange::All => (0..=total_states as u64).collect(),
        };
        for p in ps {
            let e = rep.energy_at(p);
            if &e > e_max {
                continue;
            }
            covered.entry(e).or_default().extend(rep.states_at(p));
        }
    }
    let levels = levels
        .into_iter()
        .map(|l| {
            let cov = covered.remove(&l.energy).unwrap_or_default();
            let uncovered: Vec<(i64, i64)> =
                l.states.iter().filter(|s| !cov.contains(s)).cloned().collect();
            LevelReport {
                physical_degeneracy: l.states.len(),
                algebraic_degeneracy: cov.len(),
                covered: cov.into_iter().collect(),
                uncovered,
                physical: l.states,
                energy: l.energy,
            }
        })
        .collect();
    HoleReport {
        e_max: e_max.clone(),
        levels,
    }
}
