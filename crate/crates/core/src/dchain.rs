//! D-chains, covers and the layer property.
//!
//! For a chain `D` of `s`, a D-chain is a chain of `r` whose members all
//! contract into `D`. In a finite poset a D-chain `C` is maximal exactly when
//! no single element over `D` outside `C` is comparable with all of `C`: any
//! strictly larger D-chain contains such an element.

use crate::poset::Chain;
use crate::spectral::{MapError, SpectralMap};

impl SpectralMap {
    /// Every member of `c` contracts into the member set of `d`.
    #[inline]
    pub fn is_d_chain(&self, c: Chain, d: Chain) -> bool {
        c.mask() & !self.fiber(d) == 0
    }

    fn require_d_chain(&self, c: Chain, d: Chain) -> Result<(), MapError> {
        if self.is_d_chain(c, d) {
            Ok(())
        } else {
            Err(MapError::NotADChain)
        }
    }

    #[inline]
    pub(crate) fn d_chain_is_maximal(&self, c: Chain, d: Chain) -> bool {
        self.r().extensions(c, self.fiber(d)) == 0
    }

    pub fn is_maximal_d_chain(&self, c: Chain, d: Chain) -> Result<bool, MapError> {
        self.require_d_chain(c, d)?;
        Ok(self.d_chain_is_maximal(c, d))
    }

    /// All maximal D-chains in canonical chain order. For empty `d`, or when
    /// nothing lies over `d`, this is the single empty chain.
    pub fn maximal_d_chains(&self, d: Chain) -> Vec<Chain> {
        let fiber = self.fiber(d);
        self.r()
            .chains()
            .iter()
            .copied()
            .filter(|c| c.mask() & !fiber == 0 && self.r().extensions(*c, fiber) == 0)
            .collect()
    }

    /// Contraction restricted to `c` is onto the members of `d`.
    pub fn is_cover(&self, c: Chain, d: Chain) -> Result<bool, MapError> {
        self.require_d_chain(c, d)?;
        Ok(self.image_chain(c).primes == d)
    }

    /// Contraction restricted to `c` is a bijection onto the members of `d`.
    pub fn is_perfect_cover(&self, c: Chain, d: Chain) -> Result<bool, MapError> {
        Ok(self.is_cover(c, d)? && c.len() == d.len())
    }

    /// A cover that is also a maximal D-chain. Any D-chain containing a cover
    /// is itself a cover, so maximality among covers and maximality among
    /// D-chains agree.
    pub fn is_maximal_cover(&self, c: Chain, d: Chain) -> Result<bool, MapError> {
        Ok(self.is_cover(c, d)? && self.d_chain_is_maximal(c, d))
    }

    /// Every maximal D-chain over every chain `D` of size `n` has exactly `n`
    /// members. Vacuous when `s` has no chain of that size.
    pub fn check_layer(&self, n: usize) -> bool {
        self.s()
            .chains()
            .iter()
            .filter(|d| d.len() == n)
            .all(|&d| self.maximal_d_chains(d).iter().all(|c| c.len() == n))
    }

    /// Layers `1..=n` simultaneously.
    pub fn check_layers_up_to(&self, n: usize) -> bool {
        (1..=n).all(|k| self.check_layer(k))
    }
}
