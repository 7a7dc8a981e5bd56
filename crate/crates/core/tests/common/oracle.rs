// Generated by tests/oracles/generate.py; do not edit.
#![allow(dead_code, clippy::excessive_precision)]

/// z = 0.3, b = (0.1, 0.2, 0.4), q = (0.5, −0.7, 0.9), p = (0.3, 0.8, −0.2).
pub const GENERATORS: [f64; 3] = [1.55, 2.3881982623285959249, -0.58866575490778227375];
pub const CASIMIRS: [f64; 3] = [1.0285783463917530035, 1.6294695616847167665, 3.4900298836341076837];
pub const FREE_HAMILTONIAN_EXP: f64 = 1.9010227597513220658;
/// f = eˣ, z = 0.5, q = (0.6, 0.3, 0.9); row-major.
pub const METRIC_EXP: [f64; 9] = [0.33776861802727826315, 0.0, 0.0, 0.0, 0.42513969190773438463, 0.0, 0.0, 0.0, 0.64908631777993258025];
/// Scalar curvature of the line element, f = e^{−3x}, z = 0.4, q = (0.3, −0.5, 0.4).
pub const SCALAR_CART_COSCUBED: f64 = -4.6495114659218688038;
/// Scalar curvature of the line element, f ≡ 1, z = −0.7, q = (0.3, −0.5, 0.4).
pub const SCALAR_CART_IDENTITY: f64 = -1.2501640530304516755;
/// Spherical scalar curvature, f = e^{−1.8x}, z = −0.6, κ₂ = 1.3 at (r, θ) = (0.7, 0.5).
pub const SCALAR_SPH_POWERCOS: f64 = 7.5281564416698743036;
/// Spherical scalar curvature, f = e^{−3x}, z = 0.8, κ₂ = 1 at (r, θ) = (0.9, 0.6).
pub const SCALAR_SPH_COSCUBED: f64 = -6.5186427678787419489;
/// u(r) at r = 0.2, 0.7, 1.3 for (exponent, z).
pub const GREEN_IDENTITY_POS: [f64; 3] = [-4.9916848255050960127, -1.4002358772165523965, -0.72147827316991319809];
pub const GREEN_IDENTITY_NEG: [f64; 3] = [-5.008351286480205447, -1.4584608847300187045, -0.82734451632768055032];
pub const GREEN_CONSTANT_POS: [f64; 3] = [-4.966622137396482658, -1.309953626399444776, -0.53928554248266384128];
pub const GREEN_POWERCOS_POS: [f64; 3] = [-5.0366922214529189425, -1.5579993395096367763, -1.0145049805363301954];
pub const GREEN_POWERCOS_NEG: [f64; 3] = [-4.9633588894328962177, -1.3013334522261535424, -0.5378780118910283403];
pub const GREEN_COSCUBED_POS: [f64; 3] = [-5.066622137396482658, -1.659953626399444776, -1.1892855424826638413];
pub const GREEN_COSCUBED_NEG: [f64; 3] = [-4.9332889733760027292, -1.1933759396088745945, -0.32459766237616275243];
pub const ELLIPTIC_E_03_2: f64 = 0.29091187342645994477;
pub const ELLIPTIC_E_07_03: f64 = 0.68414060780670033247;
pub const HYP2F1_A: f64 = 1.1584380209180995075;
pub const HYP2F1_B: f64 = 2.9716889457354390333;
pub const HYP2F1_C: f64 = 1.211859886749127542;
pub const INC_BETA_LOW: f64 = 0.52248812360101465861;
pub const INC_BETA_HIGH: f64 = 2.8813824527666408108;
/// Turning points of −cot r + 0.15/sin²r = −0.5.
pub const KEPLER_CURVED_TURNING: [f64; 2] = [0.16687585334767150507, 0.94027286444641899794];
