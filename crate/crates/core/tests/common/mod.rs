#![allow(dead_code)]

#[rustfmt::skip]
pub mod oracle;

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}
