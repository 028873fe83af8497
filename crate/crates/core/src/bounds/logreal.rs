use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

use serde::{Deserialize, Serialize};

/// A real number stored as a sign and the natural log of its magnitude.
///
/// Products and quotients are exact in the log domain; sums use a stable
/// log-sum-exp, so operands millions of ln-units apart are handled without
/// overflow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogReal {
    sign: i8,
    lnmag: f64,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal { sign: 0, lnmag: f64::NEG_INFINITY };
    pub const ONE: LogReal = LogReal { sign: 1, lnmag: 0.0 };

    /// Positive number with the given natural log.
    pub fn from_ln(lnmag: f64) -> Self {
        if lnmag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogReal { sign: 1, lnmag }
        }
    }

    pub fn from_parts(sign: i8, lnmag: f64) -> Self {
        if sign == 0 || lnmag == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogReal { sign: sign.signum(), lnmag }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            LogReal { sign: if x > 0.0 { 1 } else { -1 }, lnmag: x.abs().ln() }
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn lnmag(self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            self.lnmag
        }
    }

    pub fn log10mag(self) -> f64 {
        self.lnmag() / std::f64::consts::LN_10
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    /// Plain value; saturates to ±inf or 0 outside the f64 range.
    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.lnmag.exp(),
        }
    }

    /// `self^p` for non-negative `self`.
    pub fn powf(self, p: f64) -> Self {
        assert!(self.sign >= 0, "powf of a negative LogReal");
        if self.sign == 0 {
            return if p == 0.0 { Self::ONE } else { Self::ZERO };
        }
        Self::from_ln(self.lnmag * p)
    }

    pub fn abs(self) -> Self {
        LogReal { sign: self.sign.abs(), lnmag: self.lnmag }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Self {
        if self.sign == 0 {
            return other;
        }
        if other.sign == 0 {
            return self;
        }
        let (hi, lo) = if self.lnmag >= other.lnmag { (self, other) } else { (other, self) };
        let d = lo.lnmag - hi.lnmag;
        if hi.sign == lo.sign {
            LogReal { sign: hi.sign, lnmag: hi.lnmag + d.exp().ln_1p() }
        } else if d == 0.0 {
            Self::ZERO
        } else {
            LogReal { sign: hi.sign, lnmag: hi.lnmag + (-d.exp()).ln_1p() }
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: Self) -> Self {
        self.add(-other)
    }

    pub fn sum<I: IntoIterator<Item = LogReal>>(items: I) -> Self {
        items.into_iter().fold(Self::ZERO, LogReal::add)
    }

    /// Compares with a plain real without leaving the log domain when the
    /// magnitudes are far apart.
    pub fn cmp_f64(self, x: f64) -> Ordering {
        self.partial_cmp(&LogReal::from_f64(x)).expect("finite comparison")
    }
}

impl Mul for LogReal {
    type Output = LogReal;

    fn mul(self, rhs: LogReal) -> LogReal {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::ZERO;
        }
        LogReal { sign: self.sign * rhs.sign, lnmag: self.lnmag + rhs.lnmag }
    }
}

impl Div for LogReal {
    type Output = LogReal;

    fn div(self, rhs: LogReal) -> LogReal {
        assert!(rhs.sign != 0, "division by zero LogReal");
        if self.sign == 0 {
            return Self::ZERO;
        }
        LogReal { sign: self.sign * rhs.sign, lnmag: self.lnmag - rhs.lnmag }
    }
}

impl Neg for LogReal {
    type Output = LogReal;

    fn neg(self) -> LogReal {
        LogReal { sign: -self.sign, lnmag: self.lnmag }
    }
}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.lnmag.partial_cmp(&other.lnmag),
                _ => other.lnmag.partial_cmp(&self.lnmag),
            },
            ord => Some(ord),
        }
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => {
                let l10 = self.lnmag / std::f64::consts::LN_10;
                if l10.abs() < 300.0 {
                    write!(f, "{:e}", f64::from(s) * self.lnmag.exp())
                } else {
                    let e = l10.floor();
                    let m = 10f64.powf(l10 - e);
                    write!(f, "{}{:.6}e{}", if s < 0 { "-" } else { "" }, m, e as i64)
                }
            }
        }
    }
}

/// A plane order `n`, possibly far beyond the f64 range of `n²`, held as `ln n`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Order {
    ln_n: f64,
}

impl Order {
    pub fn new(n: f64) -> Self {
        Order { ln_n: n.ln() }
    }

    pub fn from_ln(ln_n: f64) -> Self {
        Order { ln_n }
    }

    /// `10^exponent`.
    pub fn from_exp10(exponent: f64) -> Self {
        Order { ln_n: exponent * std::f64::consts::LN_10 }
    }

    pub fn ln(self) -> f64 {
        self.ln_n
    }

    pub fn log10(self) -> f64 {
        self.ln_n / std::f64::consts::LN_10
    }

    /// `n` itself; infinite above ~1.8e308.
    pub fn value(self) -> f64 {
        self.ln_n.exp()
    }

    /// `1/n`, exact down to subnormals.
    pub fn recip(self) -> f64 {
        (-self.ln_n).exp()
    }

    pub fn as_logreal(self) -> LogReal {
        LogReal::from_ln(self.ln_n)
    }
}

/// `ln(N − i)` with `ln N` given, computed as `ln N + ln1p(−i/N)`.
pub(crate) fn ln_shifted(ln_big: f64, shift: f64) -> f64 {
    ln_big + (-shift * (-ln_big).exp()).ln_1p()
}

/// `ln C(x + k, k)` for real `x > −1` and integer `k`, as a product.
pub(crate) fn ln_binom_upper_real(x: f64, k: u32) -> f64 {
    (1..=k).map(|i| ((x + f64::from(i)) / f64::from(i)).ln()).sum()
}

pub(crate) fn ln_factorial(k: u32) -> f64 {
    (2..=k).map(|i| f64::from(i).ln()).sum()
}
