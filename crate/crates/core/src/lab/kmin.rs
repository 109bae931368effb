use crate::centralizer::{commutant_dim, Classify};
use crate::error::{Error, Result};
use crate::exec::{map_indices, ExecMode};
use crate::group::rng::{derive_seed, sample_stream};
use crate::group::{GroupKind, GroupTuple, Quat, Tolerance, U1};

/// First sample index whose `k`-tuple is generic and confirmed by the
/// commutant rank.
fn first_generic<G: Classify>(
    k: usize,
    samples: usize,
    seed: u64,
    tol: &Tolerance,
    mode: ExecMode,
    confirm: impl Fn(&GroupTuple<G>) -> bool + Sync,
) -> Option<usize> {
    let stream_seed = derive_seed(seed, &format!("kmin/{}/k{k}", G::KIND));
    map_indices(samples, mode, |i| {
        let mut rng = sample_stream(stream_seed, i as u64);
        let t = GroupTuple::<G>::sample_haar(k, &mut rng);
        G::is_generic(&t, tol) && confirm(&t)
    })
    .iter()
    .position(|&g| g)
}

/// Smallest `k ≤ k_max` for which a generic Haar sample exists.
///
/// For SU(2) a single element always commutes with at least the line
/// through its own axis, so a generic hit at `k = 1` is reported as an
/// error rather than a result.
pub fn kmin_search(
    kind: GroupKind,
    k_max: usize,
    samples: usize,
    seed: u64,
    tol: &Tolerance,
    mode: ExecMode,
) -> Result<usize> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be ≥ 1".into()));
    }
    for k in 1..=k_max {
        let found = match kind {
            GroupKind::U1 => first_generic::<U1>(k, samples, seed, tol, mode, |_| true),
            GroupKind::Su2 => {
                let hit = first_generic::<Quat>(k, samples, seed, tol, mode, |t| commutant_dim(t, tol) == 0);
                if k == 1 && hit.is_some() {
                    return Err(Error::InvalidArgument("a single SU(2) element classified as generic".into()));
                }
                hit
            }
        };
        if found.is_some() {
            return Ok(k);
        }
    }
    Err(Error::NotFound { k_max })
}
