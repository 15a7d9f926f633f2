//! Coefficient tables for the K-family polynomials and the explicit φ₆ display.
//! Each entry maps a w-monomial exponent to a list of (integer coefficient,
//! K-exponents); the overall scalar sits in the matching `*_SCALE` constant.

pub(crate) const PHI2K_SCALE: f64 = 5.0 / 48.0;
pub(crate) const PHI2K_TABLE: &[([u8; 4], &[(f64, [u8; 3])])] = &[
    ([2, 0, 0, 0], &[(240.0, [0, 1, 2])]),
    ([1, 1, 0, 0], &[(480.0, [1, 1, 1])]),
    ([1, 0, 1, 0], &[(480.0, [1, 1, 1])]),
    ([1, 0, 0, 1], &[(480.0, [0, 1, 2])]),
    ([0, 2, 0, 0], &[(240.0, [3, 0, 0]), (-48.0, [2, 0, 0])]),
    ([0, 1, 1, 0], &[(480.0, [1, 1, 1]), (-96.0, [1, 1, 0])]),
    ([0, 1, 0, 1], &[(264.0, [2, 0, 0]), (160.0, [1, 1, 0]), (-60.0, [1, 0, 0])]),
    ([0, 0, 2, 0], &[(180.0, [1, 1, 0]), (32.0, [0, 2, 0]), (-30.0, [0, 1, 0])]),
    ([0, 0, 1, 1], &[(184.0, [1, 1, 0]), (336.0, [0, 1, 1]), (-140.0, [0, 1, 0])]),
    ([0, 0, 0, 2], &[(12.0, [2, 0, 0]), (60.0, [1, 0, 0]), (128.0, [0, 1, 1]), (-15.0, [0, 0, 0])]),
];

pub(crate) const PHI3K_SCALE: f64 = 5.0 / 1728.0;
pub(crate) const PHI3K_TABLE: &[([u8; 4], &[(f64, [u8; 3])])] = &[
    ([3, 0, 0, 0], &[(-43200.0, [0, 2, 3])]),
    ([2, 1, 0, 0], &[(-129600.0, [2, 1, 2]), (25920.0, [1, 1, 2])]),
    ([2, 0, 1, 0], &[(-129600.0, [0, 2, 3]), (25920.0, [0, 2, 2])]),
    ([2, 0, 0, 1], &[(-71280.0, [1, 1, 2]), (-43200.0, [0, 2, 2]), (16200.0, [0, 1, 2])]),
    ([1, 2, 0, 0], &[(-129600.0, [2, 1, 2]), (51840.0, [2, 1, 1])]),
    ([1, 1, 1, 0], &[(-142560.0, [2, 1, 1]), (-34560.0, [1, 2, 1]), (32400.0, [1, 1, 1])]),
    ([1, 1, 0, 1], &[(-99360.0, [2, 1, 1]), (-129600.0, [1, 1, 2]), (75600.0, [1, 1, 1])]),
    ([1, 0, 2, 0], &[(-23760.0, [1, 2, 1]), (-90720.0, [0, 2, 2]), (37800.0, [0, 2, 1])]),
    ([1, 0, 1, 1], &[(-12960.0, [2, 1, 1]), (-64800.0, [1, 1, 1]), (-86400.0, [0, 2, 2]), (16200.0, [0, 1, 1])]),
    ([1, 0, 0, 2], &[(-6480.0, [1, 1, 2]), (-48600.0, [1, 1, 1]), (-14400.0, [0, 2, 1]), (-29160.0, [0, 1, 2]), (24300.0, [0, 1, 1])]),
    ([0, 3, 0, 0], &[(-6480.0, [4, 0, 0]), (-14400.0, [3, 1, 0]), (1944.0, [3, 0, 0])]),
    ([0, 2, 1, 0], &[(-49680.0, [3, 1, 0]), (-38880.0, [2, 1, 1]), (27432.0, [2, 1, 0])]),
    ([0, 2, 0, 1], &[(-6480.0, [4, 0, 0]), (-3888.0, [3, 0, 0]), (-69120.0, [2, 1, 1]), (17280.0, [2, 1, 0]), (1620.0, [2, 0, 0])]),
    ([0, 1, 2, 0], &[(-32400.0, [3, 1, 0]), (-12960.0, [2, 1, 0]), (-17280.0, [1, 2, 1]), (-1728.0, [1, 2, 0]), (4860.0, [1, 1, 0])]),
    ([0, 1, 1, 1], &[(-64800.0, [2, 1, 1]), (-48816.0, [2, 1, 0]), (-11520.0, [1, 2, 0]), (-22032.0, [1, 1, 1]), (27000.0, [1, 1, 0])]),
    ([0, 1, 0, 2], &[(-5508.0, [3, 0, 0]), (-18720.0, [2, 1, 0]), (-25920.0, [1, 1, 2]), (-29376.0, [1, 1, 1]), (18000.0, [1, 1, 0]), (405.0, [1, 0, 0])]),
    ([0, 0, 3, 0], &[(-19440.0, [1, 2, 1]), (3240.0, [1, 2, 0]), (384.0, [0, 3, 0]), (-9720.0, [0, 2, 1]), (4860.0, [0, 2, 0])]),
    ([0, 0, 2, 1], &[(-21060.0, [2, 1, 0]), (-7488.0, [1, 2, 0]), (-3240.0, [1, 1, 0]), (-25920.0, [0, 2, 2]), (-6912.0, [0, 2, 1]), (2880.0, [0, 2, 0]), (2025.0, [0, 1, 0])]),
    ([0, 0, 1, 2], &[(-3348.0, [2, 1, 0]), (-34992.0, [1, 1, 1]), (-8640.0, [1, 1, 0]), (-17856.0, [0, 2, 1]), (5805.0, [0, 1, 0])]),
    ([0, 0, 0, 3], &[(324.0, [3, 0, 0]), (-1620.0, [2, 0, 0]), (-3456.0, [1, 1, 1]), (-7200.0, [1, 1, 0]), (405.0, [1, 0, 0]), (-1600.0, [0, 2, 0]), (-10368.0, [0, 1, 2]), (3600.0, [0, 1, 0])]),
];

/// Multiplied by √5 at use.
pub(crate) const GAMMAK_SCALE: f64 = -125.0 / 36.0;
pub(crate) const GAMMAK_TABLE: &[([u8; 4], &[(f64, [u8; 3])])] = &[
    ([2, 0, 0, 0], &[(720.0, [0, 1, 2])]),
    ([1, 1, 0, 0], &[(1440.0, [2, 0, 1]), (-288.0, [1, 0, 1])]),
    ([1, 0, 1, 0], &[(1440.0, [0, 1, 2]), (-288.0, [0, 1, 1])]),
    ([1, 0, 0, 1], &[(792.0, [1, 0, 1]), (480.0, [0, 1, 1]), (-180.0, [0, 0, 1])]),
    ([0, 2, 0, 0], &[(720.0, [2, 0, 1]), (-288.0, [2, 0, 0])]),
    ([0, 1, 1, 0], &[(792.0, [2, 0, 0]), (192.0, [1, 1, 0]), (-180.0, [1, 0, 0])]),
    ([0, 1, 0, 1], &[(552.0, [2, 0, 0]), (720.0, [1, 0, 1]), (-420.0, [1, 0, 0])]),
    ([0, 0, 2, 0], &[(132.0, [1, 1, 0]), (504.0, [0, 1, 1]), (-210.0, [0, 1, 0])]),
    ([0, 0, 1, 1], &[(72.0, [2, 0, 0]), (360.0, [1, 0, 0]), (480.0, [0, 1, 1]), (-90.0, [0, 0, 0])]),
    ([0, 0, 0, 2], &[(36.0, [1, 0, 1]), (270.0, [1, 0, 0]), (80.0, [0, 1, 0]), (162.0, [0, 0, 1]), (-135.0, [0, 0, 0])]),
];

/// `t_K = −3125·K₁²K₂²K₃²/13824 · Σ`.
pub(crate) const TK_PREFACTOR: f64 = -3125.0 / 13824.0;
pub(crate) const TK_POLY: &[(f64, [u8; 3])] = &[
    (86400.0, [5, 0, 0]),
    (-172800.0, [4, 0, 0]),
    (-576000.0, [3, 1, 1]),
    (436800.0, [3, 1, 0]),
    (135000.0, [3, 0, 0]),
    (7200.0, [2, 2, 0]),
    (864000.0, [2, 1, 2]),
    (-777600.0, [2, 1, 1]),
    (111600.0, [2, 1, 0]),
    (-51300.0, [2, 0, 0]),
    (864000.0, [1, 2, 2]),
    (-1238400.0, [1, 2, 1]),
    (424800.0, [1, 2, 0]),
    (-475200.0, [1, 1, 2]),
    (535680.0, [1, 1, 1]),
    (-147600.0, [1, 1, 0]),
    (9450.0, [1, 0, 0]),
    (-30720.0, [0, 3, 1]),
    (25600.0, [0, 3, 0]),
    (-1728000.0, [0, 2, 4]),
    (4032000.0, [0, 2, 3]),
    (-3628800.0, [0, 2, 2]),
    (1552320.0, [0, 2, 1]),
    (-271800.0, [0, 2, 0]),
    (68256.0, [0, 1, 2]),
    (-79200.0, [0, 1, 1]),
    (23700.0, [0, 1, 0]),
    (-675.0, [0, 0, 0]),
];

/// φ₆ as an explicit sextic in u; the invariant-combination form equals 2√5 times this.
pub(crate) const PHI6_DISPLAY: [&[(f64, [u8; 4])]; 4] = [
    &[(2.0, [6, 0, 0, 0]), (-44.0, [4, 0, 1, 1]), (-38.0, [3, 2, 0, 1]), (-46.0, [3, 1, 2, 0]), (-74.0, [2, 3, 1, 0]), (-72.0, [2, 1, 0, 3]), (-68.0, [2, 0, 2, 2]), (-4.0, [1, 5, 0, 0]), (-152.0, [1, 2, 1, 2]), (-122.0, [1, 1, 3, 1]), (-2.0, [1, 0, 5, 0]), (-1.0, [1, 0, 0, 5]), (-14.0, [0, 4, 0, 2]), (-50.0, [0, 3, 2, 1]), (-14.0, [0, 2, 4, 0]), (-29.0, [0, 1, 1, 4]), (-22.0, [0, 0, 3, 3])],
    &[(-2.0, [5, 1, 0, 0]), (-14.0, [4, 0, 0, 2]), (-122.0, [3, 1, 1, 1]), (-22.0, [3, 0, 3, 0]), (-46.0, [2, 3, 0, 1]), (-68.0, [2, 2, 2, 0]), (-50.0, [2, 0, 1, 3]), (-44.0, [1, 4, 1, 0]), (-74.0, [1, 2, 0, 3]), (-152.0, [1, 1, 2, 2]), (-29.0, [1, 0, 4, 1]), (2.0, [0, 6, 0, 0]), (-38.0, [0, 3, 1, 2]), (-72.0, [0, 2, 3, 1]), (-1.0, [0, 1, 5, 0]), (-4.0, [0, 1, 0, 5]), (-14.0, [0, 0, 2, 4])],
    &[(-4.0, [5, 0, 1, 0]), (-14.0, [4, 2, 0, 0]), (-50.0, [3, 1, 0, 2]), (-74.0, [3, 0, 2, 1]), (-152.0, [2, 2, 1, 1]), (-38.0, [2, 1, 3, 0]), (-14.0, [2, 0, 0, 4]), (-29.0, [1, 4, 0, 1]), (-72.0, [1, 3, 2, 0]), (-122.0, [1, 1, 1, 3]), (-46.0, [1, 0, 3, 2]), (-1.0, [0, 5, 1, 0]), (-22.0, [0, 3, 0, 3]), (-68.0, [0, 2, 2, 2]), (-44.0, [0, 1, 4, 1]), (2.0, [0, 0, 6, 0]), (-2.0, [0, 0, 1, 5])],
    &[(-1.0, [5, 0, 0, 1]), (-29.0, [4, 1, 1, 0]), (-22.0, [3, 3, 0, 0]), (-72.0, [3, 0, 1, 2]), (-68.0, [2, 2, 0, 2]), (-152.0, [2, 1, 2, 1]), (-14.0, [2, 0, 4, 0]), (-122.0, [1, 3, 1, 1]), (-50.0, [1, 2, 3, 0]), (-44.0, [1, 1, 0, 4]), (-38.0, [1, 0, 2, 3]), (-2.0, [0, 5, 0, 1]), (-14.0, [0, 4, 2, 0]), (-46.0, [0, 2, 1, 3]), (-74.0, [0, 1, 3, 2]), (-4.0, [0, 0, 5, 1]), (2.0, [0, 0, 0, 6])],
];
