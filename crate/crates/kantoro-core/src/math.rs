//! Scalar math routines that work in both `std` and `no_std` builds.
//!
//! With `std` enabled these forward to the methods on `f64`; without it
//! they go through `libm`. `powi` is implemented here by binary
//! exponentiation so polynomial evaluation is bitwise identical under
//! either backend.

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("kantoro-core needs either the `std` feature or the `libm` feature");

macro_rules! forward {
    ($(#[$doc:meta])* $name:ident => $libm:ident) => {
        $(#[$doc])*
        #[inline]
        pub(crate) fn $name(x: f64) -> f64 {
            #[cfg(feature = "std")]
            {
                x.$name()
            }
            #[cfg(not(feature = "std"))]
            {
                libm::$libm(x)
            }
        }
    };
}

forward!(sin => sin);
forward!(cos => cos);
forward!(exp => exp);
forward!(ln => log);
forward!(atan => atan);
forward!(floor => floor);
forward!(ceil => ceil);

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.abs()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::fabs(x)
    }
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.powf(y)
    }
    #[cfg(not(feature = "std"))]
    {
        libm::pow(x, y)
    }
}

#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.hypot(y)
    }
    #[cfg(not(feature = "std"))]
    {
        libm::hypot(x, y)
    }
}

/// Integer power by squaring; exact for the small exponents used here.
pub(crate) fn powi(x: f64, n: i32) -> f64 {
    if n < 0 {
        return 1.0 / powi(x, -n);
    }
    let mut base = x;
    let mut exp = n as u32;
    let mut acc = 1.0;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

/// n! as f64; exact for n ≤ 22.
pub(crate) fn factorial(n: u32) -> f64 {
    let mut acc = 1.0;
    for i in 2..=n {
        acc *= i as f64;
    }
    acc
}

/// Binomial coefficient as f64; exact in the ranges used (n ≤ 24).
pub(crate) fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    // Every partial product is itself a binomial coefficient, so the
    // divisions are exact; round is a safeguard only.
    round(acc)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.round()
    }
    #[cfg(not(feature = "std"))]
    {
        libm::round(x)
    }
}
