//! Exact checks of the S₃-symmetric identities.
//!
//! Each theorem expression is evaluated for all six permutations `σ` of
//! `(w₁, w₂, w₃)` and the canonical [`RatFunc`] values are compared
//! componentwise.

mod lemma;
mod theorems;

use std::fmt;

use crate::{Exec, RatFunc};

pub use lemma::{lemma2_coeff_check, lemma2_series_oracle, lemma2_sides};
pub use theorems::{thm1_expr, thm3_expr, thm4_expr};

/// A permutation of `{1, 2, 3}`, stored as 0-based images.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation3([u8; 3]);

impl Permutation3 {
    pub const IDENTITY: Permutation3 = Permutation3([0, 1, 2]);

    /// From 1-based images `σ(1), σ(2), σ(3)`.
    pub fn new(images: [u8; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for &i in &images {
            if !(1..=3).contains(&i) || seen[i as usize - 1] {
                return None;
            }
            seen[i as usize - 1] = true;
        }
        Some(Permutation3(images.map(|i| i - 1)))
    }

    /// All six, identity first, in lexicographic order of images.
    pub fn all() -> [Permutation3; 6] {
        [
            Permutation3([0, 1, 2]),
            Permutation3([0, 2, 1]),
            Permutation3([1, 0, 2]),
            Permutation3([1, 2, 0]),
            Permutation3([2, 0, 1]),
            Permutation3([2, 1, 0]),
        ]
    }

    /// `(w_{σ(1)}, w_{σ(2)}, w_{σ(3)})`.
    pub fn apply<T: Copy>(&self, w: [T; 3]) -> [T; 3] {
        self.0.map(|i| w[i as usize])
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

/// One-line notation, `"132"` for the transposition of 2 and 3.
impl fmt::Display for Permutation3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.0 {
            write!(f, "{}", i + 1)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdentityParams {
    pub n: u32,
    pub w: [u32; 3],
    pub y: [u64; 3],
}

impl IdentityParams {
    pub fn new(n: u32, w: [u32; 3], y: [u64; 3]) -> Self {
        IdentityParams { n, w, y }
    }
}

/// Parameters of a checked instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckParams {
    Triple(IdentityParams),
    Lemma2 { n: u32, d: u32, w3: u32 },
}

/// Deliberate corruption used to test that the checkers can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fault {
    /// Negates the `β` factor of the last lattice term of the identity-`σ`
    /// value.
    BetaSign,
}

/// A labelled value in a report, e.g. one `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub label: String,
    pub value: RatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: &'static str,
    pub params: CheckParams,
    pub per_sigma: Vec<Entry>,
    pub verdict: bool,
    /// Labels of the first pair of values that should agree but do not.
    pub witness: Option<(String, String)>,
}

impl IdentityReport {
    /// Verdict: every entry equals the first.
    fn all_equal(name: &'static str, params: CheckParams, per_sigma: Vec<Entry>) -> Self {
        let witness = per_sigma
            .iter()
            .skip(1)
            .find(|e| e.value != per_sigma[0].value)
            .map(|e| (per_sigma[0].label.clone(), e.label.clone()));
        IdentityReport { name, params, verdict: witness.is_none(), per_sigma, witness }
    }

    /// Verdict: entries agree in consecutive pairs `(0,1), (2,3), …`.
    fn pairwise(name: &'static str, params: CheckParams, per_sigma: Vec<Entry>) -> Self {
        let witness = per_sigma
            .chunks(2)
            .find(|c| c.len() == 2 && c[0].value != c[1].value)
            .map(|c| (c[0].label.clone(), c[1].label.clone()));
        IdentityReport { name, params, verdict: witness.is_none(), per_sigma, witness }
    }
}

/// Runs checks with a chosen executor and optional fault.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Checker {
    pub exec: Exec,
    pub fault: Option<Fault>,
}

type Expr = fn(&IdentityParams, Permutation3, Option<Fault>) -> crate::Result<RatFunc>;

impl Checker {
    pub fn new(exec: Exec) -> Self {
        Checker { exec, fault: None }
    }

    pub fn with_fault(self, fault: Fault) -> Self {
        Checker { fault: Some(fault), ..self }
    }

    fn fault_for(&self, sigma: Permutation3) -> Option<Fault> {
        self.fault.filter(|_| sigma.is_identity())
    }

    fn sweep(&self, params: &IdentityParams, expr: Expr) -> crate::Result<Vec<Entry>> {
        let sigmas = Permutation3::all();
        self.exec
            .map(&sigmas, |&s| {
                expr(params, s, self.fault_for(s)).map(|value| Entry { label: s.to_string(), value })
            })
            .into_iter()
            .collect()
    }

    pub fn thm1(&self, params: &IdentityParams) -> crate::Result<IdentityReport> {
        let values = self.sweep(params, theorems::thm1_faulty)?;
        Ok(IdentityReport::all_equal("thm1", CheckParams::Triple(*params), values))
    }

    pub fn thm3(&self, params: &IdentityParams) -> crate::Result<IdentityReport> {
        let values = self.sweep(params, theorems::thm3_faulty)?;
        Ok(IdentityReport::all_equal("thm3", CheckParams::Triple(*params), values))
    }

    pub fn thm4(&self, params: &IdentityParams) -> crate::Result<IdentityReport> {
        let values = self.sweep(params, theorems::thm4_faulty)?;
        Ok(IdentityReport::all_equal("thm4", CheckParams::Triple(*params), values))
    }

    /// `thm3_expr(σ) = thm4_expr(σ)` for every `σ`.
    pub fn cross34(&self, params: &IdentityParams) -> crate::Result<IdentityReport> {
        let t3 = self.sweep(params, theorems::thm3_faulty)?;
        let t4 = self.sweep(params, theorems::thm4_faulty)?;
        let entries = t3
            .into_iter()
            .zip(t4)
            .flat_map(|(a, b)| {
                [
                    Entry { label: format!("thm3 {}", a.label), value: a.value },
                    Entry { label: format!("thm4 {}", b.label), value: b.value },
                ]
            })
            .collect();
        Ok(IdentityReport::pairwise("cross34", CheckParams::Triple(*params), entries))
    }

    pub fn lemma2(&self, n: u32, d: u32, w3: u32) -> crate::Result<IdentityReport> {
        let (lhs, rhs) = lemma2_sides(n, d, w3)?;
        let entries = vec![
            Entry { label: "lhs".into(), value: lhs },
            Entry { label: "rhs".into(), value: rhs },
        ];
        Ok(IdentityReport::pairwise("lemma2", CheckParams::Lemma2 { n, d, w3 }, entries))
    }
}

pub fn thm1_check(params: &IdentityParams) -> crate::Result<IdentityReport> {
    Checker::default().thm1(params)
}

pub fn thm3_check(params: &IdentityParams) -> crate::Result<IdentityReport> {
    Checker::default().thm3(params)
}

pub fn thm4_check(params: &IdentityParams) -> crate::Result<IdentityReport> {
    Checker::default().thm4(params)
}

pub fn cross34_check(params: &IdentityParams) -> crate::Result<IdentityReport> {
    Checker::default().cross34(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations() {
        let all = Permutation3::all();
        assert!(all[0].is_identity());
        assert_eq!(all.iter().collect::<std::collections::HashSet<_>>().len(), 6);
        assert_eq!(Permutation3::new([1, 3, 2]), Some(all[1]));
        assert_eq!(Permutation3::new([1, 1, 2]), None);
        assert_eq!(all[3].apply(['a', 'b', 'c']), ['b', 'c', 'a']);
        assert_eq!(all[3].to_string(), "231");
    }
}
