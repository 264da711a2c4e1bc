//! Reference data: the generator band data and the published tables that the
//! verifier re-derives (power forms, the squares table, conjugation schemes).
//!
//! Everything here is raw `[u16; 3]` triples so the values can be compared
//! against the printed tables at a glance.

/// Full band data of `x0`, `x1`, `x2`; diagonals beyond the fifth vanish.
pub const X0_BAND: [[u16; 3]; 5] = [[11, 11, 11], [17, 17, 17], [26, 26, 26], [11, 11, 0], [17, 0, 0]];
pub const X1_BAND: [[u16; 3]; 5] = [
    [23, 224, 138],
    [59, 136, 495],
    [26, 488, 227],
    [23, 224, 0],
    [59, 0, 0],
];
pub const X2_BAND: [[u16; 3]; 5] = [
    [46, 68, 217],
    [12, 194, 363],
    [26, 326, 77],
    [46, 68, 0],
    [12, 0, 0],
];

/// First two diagonals of `x = (x0 x1)^-1` and `y = x2 x x2^-1`.
pub const X_LEADING: [[u16; 3]; 2] = [[28, 235, 129], [29, 211, 263]];
pub const Y_LEADING: [[u16; 3]; 2] = [[28, 235, 129], [58, 3, 445]];

/// `(A1, A2)` for the four possible power forms, in the order
/// `t(n) = 1`, `t(n) = 3`, `t(n) = 2^odd`, `t(n) = 2^even` (even ≥ 2).
pub type PowerForms = [[[u16; 3]; 2]; 4];

pub const X_FORMS: PowerForms = [
    [[28, 235, 129], [29, 211, 263]],
    [[28, 235, 129], [46, 138, 451]],
    [[51, 89, 196], [0, 0, 0]],
    [[28, 235, 129], [0, 0, 0]],
];
pub const Y_FORMS: PowerForms = [
    [[28, 235, 129], [58, 3, 445]],
    [[28, 235, 129], [9, 90, 377]],
    [[51, 89, 196], [0, 157, 106]],
    [[28, 235, 129], [39, 208, 186]],
];
pub const X0_FORMS: PowerForms = [
    [[11, 11, 11], [17, 17, 17]],
    [[11, 11, 11], [11, 11, 11]],
    [[26, 26, 26], [0, 0, 0]],
    [[11, 11, 11], [0, 0, 0]],
];
pub const Y0_FORMS: PowerForms = [
    [[11, 11, 11], [44, 219, 177]],
    [[11, 11, 11], [54, 193, 171]],
    [[26, 26, 26], [0, 157, 106]],
    [[11, 11, 11], [61, 202, 160]],
];
pub const X1_FORMS: PowerForms = [
    [[23, 224, 138], [59, 136, 495]],
    [[23, 224, 138], [28, 88, 341]],
    [[39, 208, 186], [0, 0, 0]],
    [[23, 224, 138], [0, 0, 0]],
];
pub const Y1_FORMS: PowerForms = [
    [[23, 224, 138], [33, 146, 501]],
    [[23, 224, 138], [6, 66, 335]],
    [[39, 208, 186], [0, 106, 247]],
    [[23, 224, 138], [26, 26, 26]],
];

/// The four possible first diagonals of an element of `H`.
pub const H_FIRST_DIAGONALS: [[u16; 3]; 4] = [[0, 0, 0], [11, 11, 11], [23, 224, 138], [28, 235, 129]];

/// Squares table rows: first diagonal of `h ∈ H`, of `h·x2`, and the leading
/// (second) diagonal of `(h·x2)²`.
pub const SQUARES_TABLE: [[[u16; 3]; 3]; 4] = [
    [[0, 0, 0], [46, 68, 217], [41, 67, 222]],
    [[11, 11, 11], [37, 79, 210], [14, 147, 100]],
    [[23, 224, 138], [57, 164, 83], [20, 137, 126]],
    [[28, 235, 129], [50, 175, 88], [61, 202, 160]],
];

/// Possible second diagonals of elements of `Σ(T)` whose first diagonal
/// vanishes.
pub const SIGMA_SECOND_DIAGONALS: [[u16; 3]; 4] = [[0, 0, 0], [51, 89, 196], [26, 26, 26], [39, 208, 186]];

/// A printed conjugation figure: two 2×2 blocks `[[N1, N2], [N3, N4]]`, the
/// left for the `x`-side power and the right for the `y`-side power.
/// Horizontal neighbours are joined by conjugation with `x0^±1`, vertical
/// neighbours by conjugation with `x1^±1`.
#[derive(Clone, Copy, Debug)]
pub struct PrintedFigure {
    pub leading: [u16; 3],
    pub left: [[[u16; 3]; 2]; 2],
    pub right: [[[u16; 3]; 2]; 2],
}

const fn fig(
    leading: [u16; 3],
    l: [[u16; 3]; 4],
    r: [[u16; 3]; 4],
) -> PrintedFigure {
    PrintedFigure {
        leading,
        left: [[l[0], l[1]], [l[2], l[3]]],
        right: [[r[0], r[1]], [r[2], r[3]]],
    }
}

/// Figures for `(x^t, y^t)` in the regimes base, cube, `2^odd`, `2^even`.
pub const XY_FIGURES: [PrintedFigure; 4] = [
    fig(
        [28, 235, 129],
        [[29, 211, 263], [19, 64, 355], [19, 64, 355], [29, 211, 263]],
        [[58, 3, 445], [52, 144, 473], [52, 144, 473], [58, 3, 445]],
    ),
    fig(
        [28, 235, 129],
        [[46, 138, 451], [32, 25, 423], [32, 25, 423], [46, 138, 451]],
        [[9, 90, 377], [7, 201, 285], [7, 201, 285], [9, 90, 377]],
    ),
    fig(
        [51, 89, 196],
        [[0, 0, 0], [0, 247, 157], [0, 247, 157], [0, 0, 0]],
        [[0, 157, 106], [0, 106, 247], [0, 106, 247], [0, 157, 106]],
    ),
    fig(
        [28, 235, 129],
        [[0, 0, 0], [14, 147, 100], [14, 147, 100], [0, 0, 0]],
        [[39, 208, 186], [41, 67, 222], [41, 67, 222], [39, 208, 186]],
    ),
];

/// Figures for `(x0^t, y0^t)`.
pub const X0Y0_FIGURES: [PrintedFigure; 4] = [
    fig(
        [11, 11, 11],
        [[17, 17, 17], [17, 17, 17], [31, 130, 117], [31, 130, 117]],
        [[44, 219, 177], [44, 219, 177], [34, 72, 213], [34, 72, 213]],
    ),
    fig(
        [11, 11, 11],
        [[11, 11, 11], [11, 11, 11], [5, 152, 111], [5, 152, 111]],
        [[54, 193, 171], [54, 193, 171], [56, 82, 207], [56, 82, 207]],
    ),
    fig(
        [26, 26, 26],
        [[0, 0, 0], [0, 0, 0], [0, 106, 247], [0, 106, 247]],
        [[0, 157, 106], [0, 157, 106], [0, 247, 157], [0, 247, 157]],
    ),
    fig(
        [11, 11, 11],
        [[0, 0, 0], [0, 0, 0], [14, 147, 100], [14, 147, 100]],
        [[61, 202, 160], [61, 202, 160], [51, 89, 196], [51, 89, 196]],
    ),
];

/// Figures for `(x1^t, y1^t)`.
pub const X1Y1_FIGURES: [PrintedFigure; 4] = [
    fig(
        [23, 224, 138],
        [[59, 136, 495], [53, 27, 395], [59, 136, 495], [53, 27, 395]],
        [[33, 146, 501], [47, 1, 401], [33, 146, 501], [47, 1, 401]],
    ),
    fig(
        [23, 224, 138],
        [[28, 88, 341], [18, 203, 305], [28, 88, 341], [18, 203, 305]],
        [[6, 66, 335], [8, 209, 299], [6, 66, 335], [8, 209, 299]],
    ),
    fig(
        [39, 208, 186],
        [[0, 0, 0], [0, 157, 106], [0, 0, 0], [0, 157, 106]],
        [[0, 106, 247], [0, 247, 157], [0, 106, 247], [0, 247, 157]],
    ),
    fig(
        [23, 224, 138],
        [[0, 0, 0], [14, 147, 100], [0, 0, 0], [14, 147, 100]],
        [[26, 26, 26], [20, 137, 126], [26, 26, 26], [20, 137, 126]],
    ),
];

/// Relators of `G` in the generators `x0, x1, x2`.
pub const G_RELATORS: [&str; 3] = [
    "x2 x1 x2 x0 x1 x0",
    "x2 x0^-1 x2 x1^-1 x0^-1 x1",
    "x2^2 x1^-1 x0^-1 x1^-1 x0",
];

/// Relators of `H` in the generators `x0, x1`.
pub const H_RELATORS: [&str; 3] = [
    "(x1 x0)^3 x1^-3 x0^-3",
    "x1 x0^-1 x1^-1 x0^-3 x1^2 x0^-1 x1 x0 x1",
    "x1^3 x0^-1 x1 x0 x1 x0^2 x1^2 x0 x1 x0",
];

/// Candidate images `(ψ(x0), ψ(x1))` that would make `S(u_k)` isomorphic to
/// its conjugate; none of them extends to an endomorphism of `H_k` for
/// `k > 3` not a power of two.
pub const FORBIDDEN_IMAGE_PAIRS: [(&str, &str); 6] = [
    ("x0^-1", "x1^-1"),
    ("x1 x0", "x0^-1"),
    ("x1^-1", "x1 x0"),
    ("x1^-1", "x0^-1"),
    ("x0^-1", "x1 x0"),
    ("x1 x0", "x1^-1"),
];

/// Images of `x0, x1, x2` under the automorphism of `G_3` realizing the
/// reality of `S(u_3)`.
pub const PSI_IMAGES: [&str; 3] = ["x0^-1", "x1^-1", "x0^-1 x2 x0"];
