//! Named subdivision strategies, selectable from the command line.

use super::{smooth_subdivide, two_division_subdivide, FanError, FanSystem};
use crate::registry::{Named, Registry};

pub trait SubdivisionStrategy: Named {
    fn apply(&self, fs: &FanSystem) -> Result<FanSystem, FanError>;
}

struct TwoDivision;
struct Smooth;
/// Smoothing, then two-division. Barycentric subdivision keeps smooth cones smooth.
struct Snc;

impl Named for TwoDivision {
    fn name(&self) -> &'static str {
        "two-division"
    }
}

impl SubdivisionStrategy for TwoDivision {
    fn apply(&self, fs: &FanSystem) -> Result<FanSystem, FanError> {
        two_division_subdivide(fs)
    }
}

impl Named for Smooth {
    fn name(&self) -> &'static str {
        "smooth"
    }
}

impl SubdivisionStrategy for Smooth {
    fn apply(&self, fs: &FanSystem) -> Result<FanSystem, FanError> {
        smooth_subdivide(fs)
    }
}

impl Named for Snc {
    fn name(&self) -> &'static str {
        "snc"
    }
}

impl SubdivisionStrategy for Snc {
    fn apply(&self, fs: &FanSystem) -> Result<FanSystem, FanError> {
        two_division_subdivide(&smooth_subdivide(fs)?)
    }
}

pub fn strategies() -> Registry<dyn SubdivisionStrategy> {
    let mut r: Registry<dyn SubdivisionStrategy> = Registry::new("subdivision strategy");
    r.register(Box::new(TwoDivision)).register(Box::new(Smooth)).register(Box::new(Snc));
    r
}
