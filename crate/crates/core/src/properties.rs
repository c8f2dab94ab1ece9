//! Lying-over, incomparability, going-up/down/between and the chain-level
//! lifting properties, decided by direct quantification.

use std::fmt;
use std::str::FromStr;

use crate::poset::{bits, Chain};
use crate::spectral::{SpectralMap, Target};

/// A decidable property of a [`SpectralMap`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Lo,
    Inc,
    Gu,
    Gd,
    Sgb,
    Gb,
    Sclo,
    Ggd,
    ChainMorphism,
    Unitary,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Lo,
        Property::Inc,
        Property::Gu,
        Property::Gd,
        Property::Sgb,
        Property::Gb,
        Property::Sclo,
        Property::Ggd,
        Property::ChainMorphism,
        Property::Unitary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Lo => "LO",
            Property::Inc => "INC",
            Property::Gu => "GU",
            Property::Gd => "GD",
            Property::Sgb => "SGB",
            Property::Gb => "GB",
            Property::Sclo => "SCLO",
            Property::Ggd => "GGD",
            Property::ChainMorphism => "CHAIN_MORPHISM",
            Property::Unitary => "UNITARY",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase().replace('-', "_");
        match upper.as_str() {
            "GGU" => return Ok(Property::Sclo),
            "CHAIN" => return Ok(Property::ChainMorphism),
            _ => {}
        }
        Property::ALL
            .into_iter()
            .find(|p| p.as_str() == upper)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

/// Truth values of every property on one map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropertySummary {
    pub lo: bool,
    pub inc: bool,
    pub gu: bool,
    pub gd: bool,
    pub sgb: bool,
    pub gb: bool,
    pub sclo: bool,
    pub ggd: bool,
    pub chain_morphism: bool,
    pub unitary: bool,
}

impl PropertySummary {
    pub fn get(&self, p: Property) -> bool {
        match p {
            Property::Lo => self.lo,
            Property::Inc => self.inc,
            Property::Gu => self.gu,
            Property::Gd => self.gd,
            Property::Sgb => self.sgb,
            Property::Gb => self.gb,
            Property::Sclo => self.sclo,
            Property::Ggd => self.ggd,
            Property::ChainMorphism => self.chain_morphism,
            Property::Unitary => self.unitary,
        }
    }
}

impl SpectralMap {
    pub fn satisfies(&self, p: Property) -> bool {
        match p {
            Property::Lo => self.check_lo(),
            Property::Inc => self.check_inc(),
            Property::Gu => self.check_gu(),
            Property::Gd => self.check_gd(),
            Property::Sgb => self.check_sgb(),
            Property::Gb => self.check_gb(),
            Property::Sclo => self.check_sclo(),
            Property::Ggd => self.check_ggd(),
            Property::ChainMorphism => self.check_chain_morphism(),
            Property::Unitary => self.is_unitary(),
        }
    }

    pub fn summary(&self) -> PropertySummary {
        PropertySummary {
            lo: self.check_lo(),
            inc: self.check_inc(),
            gu: self.check_gu(),
            gd: self.check_gd(),
            sgb: self.check_sgb(),
            gb: self.check_gb(),
            sclo: self.check_sclo(),
            ggd: self.check_ggd(),
            chain_morphism: self.check_chain_morphism(),
            unitary: self.is_unitary(),
        }
    }

    /// Every element of `s` has an element of `r` over it.
    pub fn check_lo(&self) -> bool {
        (0..self.s().len()).all(|p| self.over(p) != 0)
    }

    /// `q1 < q2` with a proper contraction at `q2` forces strictly smaller
    /// contraction at `q1`. Monotonicity leaves only equality to rule out.
    pub fn check_inc(&self) -> bool {
        let r = self.r();
        (0..r.len()).all(|q2| match self.target(q2) {
            Target::Prime(p) => r.strictly_below(q2) & self.over(p) == 0,
            Target::Top => true,
        })
    }

    pub fn check_gu(&self) -> bool {
        let (s, r) = (self.s(), self.r());
        s.strict_pairs().into_iter().all(|(p1, p2)| {
            bits(self.over(p1)).all(|q1| r.strictly_above(q1) & self.over(p2) != 0)
        })
    }

    pub fn check_gd(&self) -> bool {
        let (s, r) = (self.s(), self.r());
        s.strict_pairs().into_iter().all(|(p1, p2)| {
            bits(self.over(p2)).all(|q2| r.strictly_below(q2) & self.over(p1) != 0)
        })
    }

    pub fn check_sgb(&self) -> bool {
        let (s, r) = (self.s(), self.r());
        for (p1, p3) in s.strict_pairs() {
            let middles = s.strictly_above(p1) & s.strictly_below(p3);
            if middles == 0 {
                continue;
            }
            for q1 in bits(self.over(p1)) {
                for q3 in bits(self.over(p3) & r.strictly_above(q1)) {
                    let between = r.strictly_above(q1) & r.strictly_below(q3);
                    if bits(middles).any(|p2| between & self.over(p2) == 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Going between, quantified over pairs `q1 < q3` whose contractions are
    /// both proper.
    pub fn check_gb(&self) -> bool {
        let (s, r) = (self.s(), self.r());
        for q1 in 0..r.len() {
            let Target::Prime(p1) = self.target(q1) else { continue };
            for q3 in bits(r.strictly_above(q1)) {
                let Target::Prime(p3) = self.target(q3) else { continue };
                let gap = s.strictly_above(p1) & s.strictly_below(p3);
                if gap != 0 && r.strictly_above(q1) & r.strictly_below(q3) == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Generalized going up: every nonempty chain of `s` lifts to a cover
    /// anchored at any prescribed lift of its least element.
    pub fn check_sclo(&self) -> bool {
        self.s().chains().iter().skip(1).all(|&d| {
            let least = d.least().expect("nonempty");
            bits(self.over(least)).all(|q| {
                self.r()
                    .chains()
                    .iter()
                    .any(|&c| c.least() == Some(q) && self.covers(c, d))
            })
        })
    }

    /// Generalized going down: the dual of [`check_sclo`](Self::check_sclo),
    /// anchored at the greatest element.
    pub fn check_ggd(&self) -> bool {
        self.s().chains().iter().skip(1).all(|&d| {
            let greatest = d.greatest().expect("nonempty");
            bits(self.over(greatest)).all(|q| {
                self.r()
                    .chains()
                    .iter()
                    .any(|&c| c.greatest() == Some(q) && self.covers(c, d))
            })
        })
    }

    /// Every chain of `s` is covered by some chain of `r`.
    pub fn check_chain_morphism(&self) -> bool {
        self.s()
            .chains()
            .iter()
            .all(|&d| self.r().chains().iter().any(|&c| self.covers(c, d)))
    }

    /// `c` is a D-chain of `d` whose contractions exhaust `d`.
    #[inline]
    pub(crate) fn covers(&self, c: Chain, d: Chain) -> bool {
        self.is_d_chain(c, d) && self.image_chain(c).primes == d
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::poset::Poset;

    fn map(s: Poset, r: Poset, targets: &[Target]) -> SpectralMap {
        SpectralMap::new(Arc::new(s), Arc::new(r), targets.to_vec()).unwrap()
    }

    /// `Z_6 -> Z_2`: the single prime of `Z_2` contracts to `2Z_6`.
    fn z6_to_z2() -> SpectralMap {
        map(
            Poset::antichain(&["2Z_6", "3Z_6"]).unwrap(),
            Poset::antichain(&["2Z_2"]).unwrap(),
            &[Target::Prime(0)],
        )
    }

    #[test]
    fn identity_satisfies_everything() {
        let d = crate::poset::make_poset(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        let id = SpectralMap::identity(Arc::new(d));
        for p in Property::ALL {
            assert!(id.satisfies(p), "{p}");
        }
    }

    #[test]
    fn z6_to_z2_fails_only_lying_over() {
        let m = z6_to_z2();
        let s = m.summary();
        assert!(s.gu && s.gd && s.sgb && s.inc);
        assert!(!s.lo);
        assert!(!s.chain_morphism);
    }

    #[test]
    fn missing_middle_breaks_sgb_and_gb() {
        let m = map(
            Poset::total_order(&["p1", "p2", "p3"]).unwrap(),
            Poset::total_order(&["q1", "q3"]).unwrap(),
            &[Target::Prime(0), Target::Prime(2)],
        );
        assert!(!m.check_sgb());
        assert!(!m.check_gb());
    }

    #[test]
    fn sclo_and_ggd_need_full_lifts() {
        let s = Poset::total_order(&["p1", "p2"]).unwrap();
        let r = Poset::antichain(&["q1"]).unwrap();
        let low = map(s.clone(), r.clone(), &[Target::Prime(0)]);
        assert!(!low.check_sclo());
        let high = map(s, r, &[Target::Prime(1)]);
        assert!(!high.check_ggd());

        let anti = Poset::antichain(&["a", "b"]).unwrap();
        let lo_onto_antichain = map(
            anti,
            Poset::antichain(&["x", "y", "z"]).unwrap(),
            &[Target::Prime(0), Target::Prime(1), Target::Prime(1)],
        );
        assert!(lo_onto_antichain.check_lo());
        assert!(lo_onto_antichain.check_sclo());
    }

    #[test]
    fn chain_morphism_vacuous_on_empty_spectrum() {
        let m = map(Poset::empty(), Poset::empty(), &[]);
        assert!(m.check_chain_morphism());
    }

    #[test]
    fn gb_ignores_pairs_reaching_top() {
        let m = map(
            Poset::total_order(&["p1", "p2"]).unwrap(),
            Poset::total_order(&["q1", "q3"]).unwrap(),
            &[Target::Prime(0), Target::Top],
        );
        assert!(m.check_gb());
        assert!(m.check_sgb());
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.as_str().parse::<Property>().unwrap(), p);
        }
        assert_eq!("ggu".parse::<Property>().unwrap(), Property::Sclo);
        assert!("nope".parse::<Property>().is_err());
    }
}
