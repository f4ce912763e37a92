//! Float math for `no_std`: routes the handful of transcendental
//! functions we need through `libm`.

/// Extension methods on `f64` backed by `libm`.
///
/// Whenever `std` enters the crate graph (test harnesses, downstream
/// binaries with feature-unified deps) the inherent methods shadow
/// these, which is why importers carry `allow(unused_imports)`.
pub trait FloatExt {
    fn sqrt(self) -> f64;
    fn abs(self) -> f64;
    fn cos(self) -> f64;
    fn sin(self) -> f64;
    fn ln(self) -> f64;
    fn atan2(self, other: f64) -> f64;
    fn hypot(self, other: f64) -> f64;
    fn copysign(self, sign: f64) -> f64;
    fn powi(self, n: i32) -> f64;
}

impl FloatExt for f64 {
    #[inline]
    fn sqrt(self) -> f64 {
        libm::sqrt(self)
    }
    #[inline]
    fn abs(self) -> f64 {
        libm::fabs(self)
    }
    #[inline]
    fn cos(self) -> f64 {
        libm::cos(self)
    }
    #[inline]
    fn sin(self) -> f64 {
        libm::sin(self)
    }
    #[inline]
    fn ln(self) -> f64 {
        libm::log(self)
    }
    #[inline]
    fn atan2(self, other: f64) -> f64 {
        libm::atan2(self, other)
    }
    #[inline]
    fn hypot(self, other: f64) -> f64 {
        libm::hypot(self, other)
    }
    #[inline]
    fn copysign(self, sign: f64) -> f64 {
        libm::copysign(self, sign)
    }
    #[inline]
    fn powi(self, n: i32) -> f64 {
        libm::pow(self, n as f64)
    }
}
