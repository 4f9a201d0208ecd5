//! Single-parity (n, n−1) distributed storage: nodes 1..k hold the data
//! fragments, node n holds their XOR, and any lost fragment is the XOR of
//! the n−1 survivors.

use crate::bits::BitString;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Fragment size used by the built-in schemes.
pub const DEFAULT_FRAGMENT_BITS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    pub node_id: usize,
    pub bits: BitString,
}

impl Fragment {
    pub fn new(node_id: usize, bits: BitString) -> Self {
        Self { node_id, bits }
    }
}

/// Storage code parameters (n, k, d).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StorageParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

impl StorageParams {
    pub fn single_parity(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::NoData);
        }
        Ok(Self { n, k: n - 1, d: n - 1 })
    }

    fn check_id(&self, id: usize) -> Result<()> {
        if id == 0 || id > self.n {
            return Err(Error::NodeId { id, n: self.n });
        }
        Ok(())
    }

    fn distinct_ids(&self, frags: &[Fragment]) -> Result<()> {
        let mut seen = BTreeSet::new();
        for f in frags {
            self.check_id(f.node_id)?;
            if !seen.insert(f.node_id) {
                return Err(Error::DuplicateNode(f.node_id));
            }
        }
        Ok(())
    }

    /// Regenerates the fragment of `failed_id` from the d surviving nodes.
    pub fn repair(&self, helpers: &[Fragment], failed_id: usize) -> Result<Fragment> {
        self.check_id(failed_id)?;
        if helpers.len() != self.d {
            return Err(Error::HelperCount {
                expected: self.d,
                got: helpers.len(),
            });
        }
        self.distinct_ids(helpers)?;
        if helpers.iter().any(|h| h.node_id == failed_id) {
            return Err(Error::DuplicateNode(failed_id));
        }
        let bits = xor_all(helpers.iter().map(|h| &h.bits))?;
        Ok(Fragment::new(failed_id, bits))
    }

    /// Recovers data fragments 1..=k from any k distinct nodes.
    pub fn reconstruct(&self, frags: &[Fragment]) -> Result<Vec<BitString>> {
        if frags.len() < self.k {
            return Err(Error::TooFewFragments {
                needed: self.k,
                got: frags.len(),
            });
        }
        self.distinct_ids(frags)?;
        let frags = &frags[..self.k];
        let missing = (1..=self.n).find(|id| frags.iter().all(|f| f.node_id != *id));
        let recovered = match missing {
            Some(id) if id <= self.k => Some(xor_all(frags.iter().map(|f| &f.bits))?),
            _ => None,
        };
        Ok((1..=self.k)
            .map(|id| {
                frags
                    .iter()
                    .find(|f| f.node_id == id)
                    .map(|f| f.bits.clone())
                    .or_else(|| recovered.clone())
                    .expect("exactly one data fragment can be missing")
            })
            .collect())
    }
}

fn xor_all<'a>(mut it: impl Iterator<Item = &'a BitString>) -> Result<BitString> {
    let first = it.next().ok_or(Error::NoData)?.clone();
    it.try_fold(first, |acc, b| acc.xor(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StorageSystem {
    pub params: StorageParams,
    pub fragments: Vec<Fragment>,
}

impl StorageSystem {
    pub fn fragment(&self, node_id: usize) -> Option<&Fragment> {
        self.fragments.iter().find(|f| f.node_id == node_id)
    }

    /// Fragments of every node except `failed_id`.
    pub fn survivors(&self, failed_id: usize) -> Vec<Fragment> {
        self.fragments
            .iter()
            .filter(|f| f.node_id != failed_id)
            .cloned()
            .collect()
    }

    pub fn parity_holds(&self) -> bool {
        xor_all(self.fragments.iter().map(|f| &f.bits))
            .map(|x| x.iter().all(|b| !b))
            .unwrap_or(false)
    }
}

/// Stores k data fragments on nodes 1..=k and their XOR on node k+1.
pub fn encode_storage(data: &[BitString]) -> Result<StorageSystem> {
    let m = data.first().ok_or(Error::NoData)?.len();
    if let Some(bad) = data.iter().find(|d| d.len() != m) {
        return Err(Error::FragmentLength {
            expected: m,
            got: bad.len(),
        });
    }
    let params = StorageParams::single_parity(data.len() + 1)?;
    let parity = xor_all(data.iter())?;
    let mut fragments: Vec<Fragment> = data
        .iter()
        .enumerate()
        .map(|(i, d)| Fragment::new(i + 1, d.clone()))
        .collect();
    fragments.push(Fragment::new(params.n, parity));
    Ok(StorageSystem { params, fragments })
}
