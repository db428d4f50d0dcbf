//! Chief series and the central / non-central chief factor products.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, Quotient};

/// One chief factor `X/Y` of `G`.
#[derive(Clone)]
pub struct ChiefFactor {
    pub upper: PermGroup,
    pub lower: PermGroup,
    pub order: u128,
    pub is_abelian: bool,
    pub is_central: bool,
    /// `G/Y` as a coset action.
    pub quotient: Arc<Quotient>,
    /// `X/Y` inside `G/Y`.
    pub factor: PermGroup,
}

impl ChiefFactor {
    /// `|C_{X/Y}(g)|` for `g` in `G`, acting by conjugation.
    pub fn fixed_points(&self, g: &Permutation) -> Result<u128> {
        let img = self.quotient.image_of(g)?;
        Ok(self
            .factor
            .enumerate()?
            .iter()
            .filter(|x| x.commutes_with(&img))
            .count() as u128)
    }
}

impl std::fmt::Debug for ChiefFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChiefFactor")
            .field("order", &self.order)
            .field("is_abelian", &self.is_abelian)
            .field("is_central", &self.is_central)
            .finish()
    }
}

#[derive(Debug, Clone)]
pub struct ChiefSeries {
    pub group: PermGroup,
    /// From the bottom (lower = 1) to the top (upper = G).
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeries {
    /// `(ccf, ncf)`: products of central and non-central factor orders.
    pub fn ccf_ncf(&self) -> (u128, u128) {
        self.factors.iter().fold((1, 1), |(c, n), f| {
            if f.is_central {
                (c * f.order, n)
            } else {
                (c, n * f.order)
            }
        })
    }

    /// Sorted `(order, is_abelian, is_central)` annotations.
    pub fn signature(&self) -> Vec<(u128, bool, bool)> {
        let mut v: Vec<_> = self
            .factors
            .iter()
            .map(|f| (f.order, f.is_abelian, f.is_central))
            .collect();
        v.sort_unstable();
        v
    }

    /// Plain-text table: level, |X/Y|, abelian?, central?.
    pub fn table(&self) -> String {
        let mut out = String::from("level  |X/Y|  abelian  central\n");
        for (i, f) in self.factors.iter().enumerate() {
            out.push_str(&format!(
                "{:>5}  {:>5}  {:>7}  {:>7}\n",
                i,
                f.order,
                if f.is_abelian { "yes" } else { "no" },
                if f.is_central { "yes" } else { "no" }
            ));
        }
        out
    }
}

/// Which minimal normal subgroup to climb through when several exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Lexicographically least sorted element-index list.
    #[default]
    First,
    /// Lexicographically greatest; used to cross-check series independence.
    Last,
}

fn index_key(g: &PermGroup, sub: &PermGroup) -> Result<Vec<usize>> {
    let table = g.table()?;
    let mut key: Vec<usize> = sub
        .enumerate()?
        .iter()
        .map(|x| table.index_of(x).expect("subgroup element"))
        .collect();
    key.sort_unstable();
    Ok(key)
}

/// Minimal normal subgroups of `g`, ordered by their sorted element-index lists.
pub fn minimal_normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    if g.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    let classes = g.conjugacy_classes()?;
    let mut candidates: Vec<PermGroup> = Vec::new();
    for rep in &classes.class_reps {
        if rep.is_identity() {
            continue;
        }
        let n = g.normal_closure(std::slice::from_ref(rep))?;
        if !candidates.iter().any(|c| c.same_group(&n)) {
            candidates.push(n);
        }
    }
    let minimal: Vec<PermGroup> = candidates
        .iter()
        .filter(|n| {
            !candidates
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect();
    let mut keyed = minimal
        .into_iter()
        .map(|n| Ok((index_key(g, &n)?, n)))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, n)| n).collect())
}

pub fn chief_series(g: &PermGroup) -> Result<ChiefSeries> {
    chief_series_with(g, TieBreak::First)
}

pub fn chief_series_with(g: &PermGroup, tie: TieBreak) -> Result<ChiefSeries> {
    let mut lower = PermGroup::trivial(g.degree());
    let mut factors = Vec::new();
    while lower.order() < g.order() {
        let quotient = Arc::new(g.quotient(&lower)?);
        let top = quotient.group();
        let mins = minimal_normal_subgroups(top)?;
        let chosen = match tie {
            TieBreak::First => mins.first(),
            TieBreak::Last => mins.last(),
        }
        .expect("nontrivial group has a minimal normal subgroup")
        .clone();
        let upper = quotient.preimage(&chosen)?;
        let order = upper.order() / lower.order();
        let is_abelian = commutators_inside(upper.generators(), upper.generators(), &lower);
        let is_central = commutators_inside(g.generators(), upper.generators(), &lower);
        factors.push(ChiefFactor {
            upper: upper.clone(),
            lower: lower.clone(),
            order,
            is_abelian,
            is_central,
            quotient,
            factor: chosen,
        });
        lower = upper;
    }
    Ok(ChiefSeries {
        group: g.clone(),
        factors,
    })
}

/// `[a, b]` lies in `target` for every generator pair.
pub fn commutators_inside(a: &[Permutation], b: &[Permutation], target: &PermGroup) -> bool {
    a.iter()
        .all(|x| b.iter().all(|y| target.contains(&Permutation::commutator(x, y))))
}

/// `(ccf(G), ncf(G))` from the default chief series.
pub fn ccf_ncf(g: &PermGroup) -> Result<(u128, u128)> {
    Ok(chief_series(g)?.ccf_ncf())
}

/// Compares two subgroups by their element-index keys inside `g`.
pub fn compare_subgroups(g: &PermGroup, a: &PermGroup, b: &PermGroup) -> Result<Ordering> {
    Ok(index_key(g, a)?.cmp(&index_key(g, b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::perms;

    fn group(degree: usize, cycles: &[&str]) -> PermGroup {
        PermGroup::new(degree, perms(degree, cycles).unwrap()).unwrap()
    }

    #[test]
    fn minimal_normal_spot_values() {
        let s3 = group(3, &["(0 1 2)", "(0 1)"]);
        let m = minimal_normal_subgroups(&s3).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 3);

        let v4 = group(4, &["(0 1)", "(2 3)"]);
        let m = minimal_normal_subgroups(&v4).unwrap();
        assert_eq!(m.iter().map(PermGroup::order).collect::<Vec<_>>(), vec![2, 2, 2]);

        let a5 = group(5, &["(0 1 2 3 4)", "(0 1 2)"]);
        let m = minimal_normal_subgroups(&a5).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 60);

        assert_eq!(minimal_normal_subgroups(&PermGroup::trivial(2)).unwrap_err(), Error::TrivialGroup);
    }

    #[test]
    fn chief_series_spot_values() {
        let s3 = group(3, &["(0 1 2)", "(0 1)"]);
        let cs = chief_series(&s3).unwrap();
        let ann: Vec<_> = cs.factors.iter().map(|f| (f.order, f.is_abelian, f.is_central)).collect();
        assert_eq!(ann, vec![(3, true, false), (2, true, true)]);
        assert_eq!(cs.ccf_ncf(), (2, 3));

        let a5 = group(5, &["(0 1 2 3 4)", "(0 1 2)"]);
        let cs = chief_series(&a5).unwrap();
        assert_eq!(cs.signature(), vec![(60, false, false)]);
        assert_eq!(cs.ccf_ncf(), (1, 60));

        let c6 = group(5, &["(0 1 2)", "(3 4)"]);
        let cs = chief_series(&c6).unwrap();
        assert_eq!(cs.signature(), vec![(2, true, true), (3, true, true)]);
        assert_eq!(cs.ccf_ncf(), (6, 1));
    }

    #[test]
    fn series_boundaries_chain() {
        let s4 = group(4, &["(0 1 2 3)", "(0 1)"]);
        let cs = chief_series(&s4).unwrap();
        assert!(cs.factors[0].lower.is_trivial());
        assert!(cs.factors.last().unwrap().upper.same_group(&s4));
        for w in cs.factors.windows(2) {
            assert!(w[0].upper.same_group(&w[1].lower));
        }
        assert_eq!(cs.factors.iter().map(|f| f.order).product::<u128>(), 24);
        assert_eq!(cs.signature(), vec![(2, true, true), (3, true, false), (4, true, false)]);
        for f in &cs.factors {
            assert!(f.upper.is_normal_in(&s4) && f.lower.is_normal_in(&s4));
        }
    }

    #[test]
    fn tie_break_does_not_change_invariants() {
        let s3c2 = group(5, &["(0 1 2)", "(0 1)", "(3 4)"]);
        let a = chief_series_with(&s3c2, TieBreak::First).unwrap();
        let b = chief_series_with(&s3c2, TieBreak::Last).unwrap();
        assert_ne!(
            a.factors[0].upper.order(),
            b.factors[0].upper.order(),
            "two different minimal normal subgroups are available"
        );
        assert_eq!(a.ccf_ncf(), b.ccf_ncf());
        assert_eq!(a.signature(), b.signature());
    }

    #[test]
    fn fixed_points_on_factors() {
        let s3 = group(3, &["(0 1 2)", "(0 1)"]);
        let cs = chief_series(&s3).unwrap();
        let t = perms(3, &["(0 1)"]).unwrap().remove(0);
        let c = perms(3, &["(0 1 2)"]).unwrap().remove(0);
        assert_eq!(cs.factors[0].fixed_points(&t).unwrap(), 1);
        assert_eq!(cs.factors[0].fixed_points(&c).unwrap(), 3);
        assert_eq!(cs.factors[1].fixed_points(&t).unwrap(), 2);
    }
}
