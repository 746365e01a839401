//! Even-indexed Bernoulli numbers `B_{2k}` as `f64` constants.
//!
//! These feed the Euler–Maclaurin tail in the Hurwitz-zeta evaluator and the
//! asymptotic series for `digamma` / `log_gamma`. Thirty terms (up to `B_60`)
//! is more than the evaluators ever request; the default tail length is 24.
//!
//! Values are the exact rationals rounded to nearest `f64`
//! (e.g. `B_2 = 1/6`, `B_12 = -691/2730`, `B_24 = -236364091/2730`).

/// `BERNOULLI_EVEN[k] = B_{2k}` for `k = 0..=30` (so `B_0` through `B_60`).
pub const BERNOULLI_EVEN: [f64; 31] = [
    1.0,
    0.166_666_666_666_666_66,    // B_2  = 1/6
    -0.033_333_333_333_333_33,   // B_4  = -1/30
    0.023_809_523_809_523_808,   // B_6  = 1/42
    -0.033_333_333_333_333_33,   // B_8  = -1/30
    0.075_757_575_757_575_76,    // B_10 = 5/66
    -0.253_113_553_113_553_1,    // B_12 = -691/2730
    1.166_666_666_666_666_7,     // B_14 = 7/6
    -7.092_156_862_745_098,      // B_16 = -3617/510
    54.971_177_944_862_16,       // B_18 = 43867/798
    -529.124_242_424_242_4,      // B_20 = -174611/330
    6_192.123_188_405_797,       // B_22 = 854513/138
    -86_580.253_113_553_11,      // B_24 = -236364091/2730
    1_425_517.166_666_666_7,     // B_26 = 8553103/6
    -27_298_231.067_816_092,     // B_28 = -23749461029/870
    601_580_873.900_642_4,       // B_30 = 8615841276005/14322
    -15_116_315_767.092_157,     // B_32 = -7709321041217/510
    429_614_643_061.166_7,       // B_34 = 2577687858367/6
    -13_711_655_205_088.332,     // B_36 = -26315271553053477373/1919190
    488_332_318_973_593.2,      // B_38 = 2929993913841559/6
    -1.929_657_934_194_006_8e16, // B_40
    8.416_930_475_736_826e17,    // B_42
    -4.033_807_185_405_945e19,   // B_44
    2.115_074_863_808_199_2e21,  // B_46
    -1.208_662_652_229_652_6e23, // B_48
    7.500_866_746_076_964e24,    // B_50
    -5.038_778_101_481_069e26,   // B_52
    3.652_877_648_481_812e28,    // B_54
    -2.849_876_930_245_088e30,   // B_56
    2.386_542_749_968_362_4e32,  // B_58
    -2.139_994_925_722_533_5e34, // B_60
];

/// Largest tail length the evaluators may request: `B_{2k}` exists for `k <= MAX_TAIL_TERMS`.
pub const MAX_TAIL_TERMS: usize = BERNOULLI_EVEN.len() - 1;

/// `B_{2k} / (2k)!` for `k = 1..=MAX_TAIL_TERMS`, indexed as `em_coefficient(k)`.
///
/// This is the combination the Euler–Maclaurin tail actually needs; it decays
/// like `2 (2π)^{-2k}`, so computing it by runtime division is exact enough
/// (both factors are well inside `f64` range: `(2k)!` for `k ≤ 30` is `< 60! ≈ 8.3e81`).
pub fn em_coefficient(k: usize) -> f64 {
    assert!(
        (1..=MAX_TAIL_TERMS).contains(&k),
        "Bernoulli table holds B_2..B_{}, requested B_{}",
        2 * MAX_TAIL_TERMS,
        2 * k
    );
    let mut factorial = 1.0f64;
    for m in 2..=(2 * k) {
        factorial *= m as f64;
    }
    BERNOULLI_EVEN[k] / factorial
}
