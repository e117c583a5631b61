//! Assembly of deformation K-theory homotopy from representation-ring
//! homotopy through the degenerate first-quadrant spectral sequence: the
//! degree-n output collects the inputs in degrees n, n-2, n-4, ...

use crate::graded::{GradedAbelianGroup, GroupEntry};

pub const EXTENSION_WARNING: &str = "associated graded only — extensions unresolved";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AhssResult {
    pub groups: GradedAbelianGroup,
    pub warning: Option<String>,
}

/// Collapse `pi_p(input) (x) pi_q(ku)` along even `q` with no differentials.
/// Torsion in any contributing degree makes the answer an associated graded
/// object only, which is reported through `warning`.
pub fn ahss_assemble(pi_r: &GradedAbelianGroup, max_deg: u32) -> AhssResult {
    let mut groups = GradedAbelianGroup::zero();
    let mut saw_torsion = false;
    for n in 0..=max_deg {
        let mut acc: Option<GroupEntry> = None;
        let mut p = n;
        loop {
            if let Some(e) = pi_r.entry(p) {
                if !e.torsion.is_empty() {
                    saw_torsion = true;
                }
                acc = Some(match acc {
                    Some(prev) => prev.add(e),
                    None => e.clone(),
                });
            }
            if p < 2 {
                break;
            }
            p -= 2;
        }
        if let Some(entry) = acc {
            groups.set(n, entry);
        }
    }
    let warning = saw_torsion.then(|| EXTENSION_WARNING.to_string());
    AhssResult { groups, warning }
}
