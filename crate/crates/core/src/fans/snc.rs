use super::orbits::ray_class_index;
use super::{ray_classes, ConeId, FanError, FanSystem, RayId};

/// Two rays of one window cone that lie in the same ray class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub cone: ConeId,
    pub rays: (RayId, RayId),
    pub class: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SncReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// Checks that no cone has two distinct Γ-equivalent rays. Checking the
/// maximal window cones suffices since faces inherit the property.
pub fn check_snc_condition(fs: &FanSystem) -> Result<SncReport, FanError> {
    let classes = ray_classes(fs)?;
    let class_of = ray_class_index(&classes, fs.rays().len());
    let mut violations = Vec::new();
    for cone in fs.cones() {
        for (i, &a) in cone.rays.iter().enumerate() {
            for &b in &cone.rays[i + 1..] {
                if class_of[a] == class_of[b] {
                    violations.push(Violation { cone: cone.id, rays: (a, b), class: class_of[a] });
                }
            }
        }
    }
    Ok(SncReport { ok: violations.is_empty(), violations })
}
