use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

/// Relative precision promised by [`log_of_big`].
pub const LOG_REL_PRECISION: f64 = 1e-14;

/// Natural logarithm of an explicitly held positive integer.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExactLog {
    #[serde(serialize_with = "as_decimal")]
    pub integer_value: BigUint,
    pub log_value: f64,
    pub rel_precision: f64,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// `log v` from the bit length and the top 64 bits of `v`.
///
/// Panics on `v = 0`.
pub fn log_of_big(v: &BigUint) -> ExactLog {
    let bits = v.bits();
    assert!(bits > 0, "log of zero");
    let log_value = if bits <= 64 {
        v.to_u64().expect("fits").to_f64().expect("finite").ln()
    } else {
        let shift = bits - 64;
        let top = (v >> shift).to_u64().expect("64 bits");
        (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
    };
    ExactLog { integer_value: v.clone(), log_value, rel_precision: LOG_REL_PRECISION }
}
