use std::collections::HashSet;

use super::{GroupElement, GroupSpec};

/// Elements expressible as products of at most `radius` generators and
/// inverses, in length-lex order: by word length in `generators`, ties broken
/// by the element order. Stops early once a sphere is empty, so
/// `usize::MAX` enumerates a finite group completely.
pub fn enumerate_ball(spec: &GroupSpec, generators: &[GroupElement], radius: usize) -> Vec<GroupElement> {
    let identity = spec.identity();
    let mut steps: Vec<GroupElement> = Vec::with_capacity(2 * generators.len());
    for g in generators {
        steps.push(g.clone());
        steps.push(g.inverse());
    }
    let mut seen: HashSet<GroupElement> = HashSet::new();
    seen.insert(identity.clone());
    let mut out = vec![identity];
    let mut sphere_start = 0;
    for _ in 0..radius {
        let mut sphere = Vec::new();
        for g in &out[sphere_start..] {
            for s in &steps {
                let h = g * s;
                if seen.insert(h.clone()) {
                    sphere.push(h);
                }
            }
        }
        if sphere.is_empty() {
            break;
        }
        sphere.sort();
        sphere_start = out.len();
        out.extend(sphere);
    }
    out
}
