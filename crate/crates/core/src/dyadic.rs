use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// An exact nonnegative dyadic rational `numerator / 2^exponent`, always in
/// lowest terms (the numerator is odd unless the exponent is 0).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DyadicSum {
    numerator: BigUint,
    exponent: u32,
}

impl DyadicSum {
    pub fn zero() -> Self {
        DyadicSum {
            numerator: BigUint::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        DyadicSum {
            numerator: BigUint::one(),
            exponent: 0,
        }
    }

    /// `2^(-k)`.
    pub fn inverse_power_of_two(k: u32) -> Self {
        DyadicSum {
            numerator: BigUint::one(),
            exponent: k,
        }
    }

    pub fn new(numerator: BigUint, exponent: u32) -> Self {
        DyadicSum {
            numerator,
            exponent,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return self;
        }
        let tz = self.numerator.trailing_zeros().unwrap_or(0);
        let shift = tz.min(u64::from(self.exponent)) as u32;
        if shift > 0 {
            self.numerator >>= shift;
            self.exponent -= shift;
        }
        self
    }

    pub fn numerator(&self) -> &BigUint {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.numerator.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Numerators of both values scaled to the common exponent.
    fn aligned(&self, other: &Self) -> (BigUint, BigUint, u32) {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        (a, b, e)
    }
}

impl Add for &DyadicSum {
    type Output = DyadicSum;

    fn add(self, other: &DyadicSum) -> DyadicSum {
        let (a, b, e) = self.aligned(other);
        DyadicSum::new(a + b, e)
    }
}

impl Add for DyadicSum {
    type Output = DyadicSum;

    fn add(self, other: DyadicSum) -> DyadicSum {
        &self + &other
    }
}

impl std::iter::Sum for DyadicSum {
    fn sum<I: Iterator<Item = DyadicSum>>(iter: I) -> Self {
        iter.fold(DyadicSum::zero(), |acc, x| &acc + &x)
    }
}

impl Ord for DyadicSum {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl PartialOrd for DyadicSum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DyadicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/2^{}", self.numerator, self.exponent)
        }
    }
}

impl fmt::Debug for DyadicSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn halves_sum_to_one() {
        let h = DyadicSum::inverse_power_of_two(1);
        assert!((&h + &h).is_one());
        assert_eq!((&h + &h).to_string(), "1");
    }

    #[test]
    fn lowest_terms() {
        let x = DyadicSum::new(BigUint::from(12u32), 5);
        assert_eq!(x.numerator(), &BigUint::from(3u32));
        assert_eq!(x.exponent(), 3);
        assert_eq!(DyadicSum::new(BigUint::zero(), 9), DyadicSum::zero());
    }

    #[test]
    fn ordering_against_one() {
        let a = DyadicSum::inverse_power_of_two(2) + DyadicSum::inverse_power_of_two(1);
        assert!(a < DyadicSum::one());
        assert!(a > DyadicSum::zero());
        assert_eq!(a.to_string(), "3/2^2");
    }

    proptest! {
        // Compare against a u128 rational with a fixed denominator 2^40.
        #[test]
        fn sums_match_fixed_point(ks in proptest::collection::vec(0u32..40, 0..30)) {
            let s: DyadicSum = ks.iter().map(|&k| DyadicSum::inverse_power_of_two(k)).sum();
            let fixed: u128 = ks.iter().map(|&k| 1u128 << (40 - k)).sum();
            let scaled = s.numerator() << (40 - s.exponent());
            prop_assert_eq!(scaled, BigUint::from(fixed));
        }
    }
}
