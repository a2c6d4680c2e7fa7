//! Transcribed formulas. Every coefficient, substitution and point of the
//! catalogue is written here once, as text, and parsed at start-up.
//!
//! Rows with `a: None` are not printed in the source: their coefficients are
//! obtained by substituting into the parent and renormalizing. `parent_points`
//! are x-coordinates on the parent model, written in the parent's variable
//! (bound to the substitution) or directly in the new one; they are moved onto
//! the entry's own model by the twist scaling.

pub(super) struct PointText {
    pub x: &'static str,
    pub y: Option<&'static str>,
}

pub(super) struct Row {
    pub id: &'static str,
    pub param: &'static str,
    pub description: &'static str,
    pub parent: Option<&'static str>,
    /// Label and formula of the substitution `parent_var = sub(param)`.
    pub sub: Option<(&'static str, &'static str)>,
    /// Extra names available while parsing this row, e.g. `a = v + 1`.
    pub bindings: &'static [(&'static str, &'static str)],
    pub a: Option<&'static str>,
    pub b: Option<&'static str>,
    pub c: Option<&'static str>,
    pub points: &'static [PointText],
    pub parent_points: &'static [&'static str],
    pub torsion: &'static str,
    pub generator: Option<PointText>,
    /// Tate normal form parameters (b, c) the model comes from, if any.
    pub tate: Option<(&'static str, &'static str)>,
}

const fn x(x: &'static str) -> PointText {
    PointText { x, y: None }
}

const fn xy(x: &'static str, y: &'static str) -> PointText {
    PointText { x, y: Some(y) }
}

const ROW: Row = Row {
    id: "",
    param: "w",
    description: "",
    parent: None,
    sub: None,
    bindings: &[],
    a: None,
    b: None,
    c: None,
    points: &[],
    parent_points: &[],
    torsion: "",
    generator: None,
    tate: None,
};

const fn z8_rank1(
    id: &'static str,
    label: &'static str,
    sub: &'static str,
    parent_points: &'static [&'static str],
) -> Row {
    Row {
        id,
        description: "rank-1 subfamily of the Z/8 family",
        parent: Some("Z8_BASE"),
        sub: Some((label, sub)),
        parent_points,
        torsion: "Z8",
        ..ROW
    }
}

const fn z26_rank1(
    id: &'static str,
    label: &'static str,
    sub: &'static str,
    parent_points: &'static [&'static str],
) -> Row {
    Row {
        id,
        description: "rank-1 subfamily of the Z/2 x Z/6 family",
        parent: Some("Z26_BASE"),
        sub: Some((label, sub)),
        parent_points,
        torsion: "Z2xZ6",
        ..ROW
    }
}

const HADANO_A: &str = "2 (-1 + 8 a^2 - 10 a^4 + 3 a^8 + 4 a v + 8 a^3 v - 12 a^5 v + 2 v^2 \
    + 6 a^4 v^2 - 4 a v^3 - v^4)";
const HADANO_B: &str = "(-1 + a^2 - v)^3 (1 - 4 a + 3 a^2 - v) (-1 + a^2 + v)^3 (1 + 4 a + 3 a^2 + v)";
const HADANO_P: (&str, &str) = (
    "-(1 - 4 a + 3 a^2 - v) (-1 + a^2 + v)^3",
    "4 (1 - 4 a + 3 a^2 - v) (-a + a^3 - v) (-1 + a^2 + v)^3",
);

/// The two-parameter coefficient and point formulas of the Z/6 model, in `a`
/// and `v`, before the specialization `a = v + 1`.
pub const HADANO_TWO_PARAM: [&str; 4] = [HADANO_A, HADANO_B, HADANO_P.0, HADANO_P.1];

/// The Z/6 model Y² = X³ + (a² + 2ab − 2b²)X² − (2a − b)b³X with the value of
/// b that puts a point on it: [b, A, B].
pub const HADANO_MODEL: [&str; 3] = [
    "-(-1 + a^2 - v) (-1 + a^2 + v)/(4 (-a + a^3 - v))",
    "a^2 + 2 a b - 2 b^2",
    "-(2 a - b) b^3",
];

/// Square conditions along the chain: full 2-torsion (in a, v), then the
/// extra point (in w).
pub const HADANO_CONDITIONS: [&str; 2] = [
    "a (-a + a^3 - v) (-1 + a^2 - a v + v^2)",
    "4 - 9 w + 3 w^2",
];

pub(super) const ROWS: &[Row] = &[
    Row {
        id: "Z8_BASE",
        param: "v",
        description: "general Z/8 family from the Tate normal form",
        a: Some("1 - 8 v + 16 v^2 - 16 v^3 + 8 v^4"),
        b: Some("16 (-1 + v)^4 v^4"),
        torsion: "Z8",
        // DERIVED: image of the Tate point (0,0), order 8
        generator: Some(xy("4 v^3 (1 - v)", "4 v^3 (v - 1) (2 v - 1)")),
        tate: Some(("(2 v - 1) (v - 1)", "(2 v - 1) (v - 1)/v")),
        ..ROW
    },
    Row {
        id: "Z26_BASE",
        param: "v",
        description: "general Z/2 x Z/6 family from the Tate normal form",
        a: Some("37 - 84 v + 102 v^2 - 36 v^3 - 3 v^4"),
        b: Some("32 (-1 + v)^3 (1 + v)^3 (-5 + 3 v)"),
        torsion: "Z2xZ6",
        generator: Some(xy(
            "8 (-1 + v) (1 + v) (-5 + 3 v)",
            "8 (-3 + v)^2 (-1 + v) (1 + v) (-5 + 3 v)",
        )),
        tate: Some((
            "(-v^2 + 1)/(2 (3 v - 5)) + ((-v^2 + 1)/(2 (3 v - 5)))^2",
            "(-v^2 + 1)/(2 (3 v - 5))",
        )),
        ..ROW
    },
    Row {
        id: "Z7_REMARK",
        param: "t",
        description: "general Z/7 family, full cubic model",
        a: Some("1 - 2 t + 3 t^2 + 6 t^3 + t^4"),
        b: Some("-8 t^2 (1 + t) (-1 + t + t^2)"),
        c: Some("16 t^4 (1 + t)^2"),
        torsion: "Z7",
        generator: Some(xy("0", "4 t^2 (1 + t)")),
        ..ROW
    },
    z8_rank1(
        "Z8_R1_1",
        "v1",
        "(1 + w^2)/(3 - 2 w + w^2)",
        &["-16 v^4 (1 - 4 v + 2 v^2)/(-1 + 4 v)^2"],
    ),
    z8_rank1(
        "Z8_R1_2",
        "v2",
        "5 (1 + w^2)/(2 (9 + 4 w^2))",
        &["-(-1 + v)^4 (-5 + 8 v) (-5 + 18 v)/(4 (-2 + 3 v)^2)"],
    ),
    z8_rank1(
        "Z8_R1_3",
        "v3",
        "(1 + 3 w^2)/(3 + w^2)",
        &["-4 (-3 + v) (-1 + v)^2 v^4 (-1 + 3 v)/(1 - 4 v + 2 v^2)^2"],
    ),
    z8_rank1(
        "Z8_R1_4",
        "v4",
        "(-2 + w) w/(-2 + w^2)",
        &["16 (-1 + v)^2 v^2 (1 - 2 v + 2 v^2)"],
    ),
    z8_rank1(
        "Z8_R1_5",
        "v5",
        "(-2 + w) w/(1 + w^2)",
        &["-64 (-1 + v)^2 v^2 (-1 - v + v^2)/(-1 - 4 v + 4 v^2)^2"],
    ),
    z8_rank1(
        "Z8_R1_6",
        "v6",
        "(2 - 2 w + w^2)/(4 + w^2)",
        &["-(-1 + v)^2 (1 - 6 v + 4 v^2)"],
    ),
    z8_rank1("Z8_R1_7", "v7", "(-5 + w^2)/(4 (-1 + w))", &["4 v^4"]),
    z8_rank1(
        "Z8_R1_8",
        "v8",
        "(34 - 6 w + w^2)/(36 + w^2)",
        &["-(-1 + v)^2 (-5 + 2 v)^2 (25 - 70 v + 36 v^2)/(-7 + 6 v)^2"],
    ),
    // No point is printed for this substitution and none was found.
    z8_rank1("Z8_R1_9", "v9", "(w^2 + 12)/(2 (w^2 + 4))", &[]),
    // DERIVED: point found by search, written directly in w
    z8_rank1(
        "Z8_R1_10",
        "v10",
        "-2 w/(1 - w + w^2)",
        &["-16 w (w^2 + w + 1)^2/(w^2 - w + 1)^4"],
    ),
    z26_rank1(
        "Z26_R1_1",
        "v1",
        "3 (-1 + w) (1 + w)/(-29 - 8 w + w^2)",
        &["8 (-1 + v)^3 (1 + v)"],
    ),
    z26_rank1(
        "Z26_R1_2",
        "v2",
        "3 (-3 + w) (3 + w)/(-45 - 24 w + w^2)",
        &["4 (1 + v)^3"],
    ),
    z26_rank1(
        "Z26_R1_3",
        "v3",
        "(-7 + w^2)/(1 - 4 w + w^2)",
        &["2 (-1 + v) (1 + v)^2 (-5 + 3 v)"],
    ),
    z26_rank1(
        "Z26_R1_4",
        "v4",
        "(-11 + w^2)/(5 - 4 w + w^2)",
        &["-16 (-1 + v)^2 (1 + v)"],
    ),
    z26_rank1(
        "Z26_R1_5",
        "v5",
        "3 (261 + w^2)/(153 - 24 w + w^2)",
        &["16 (-5 + 3 v) (3 v - 7)^2"],
    ),
    z26_rank1(
        "Z26_R1_6",
        "v6",
        "(135 - w^2)/(141 + 24 w + w^2)",
        &["16 (1 + v) (v - 5)^2"],
    ),
    z26_rank1(
        "Z26_R1_7",
        "v7",
        "(41 - w^2)/(2 (27 + 7 w))",
        &["4 (-1 + v)^2 (1 + v)^2 (41 - 54 v + 49 v^2)/(-1 + 3 v)^2"],
    ),
    z26_rank1("Z26_R1_8", "v8", "3/(5 - w^2)", &["(-5 + 3 v) (3 v - 1)^2"]),
    z26_rank1(
        "Z26_R1_9",
        "v9",
        "(-7 - 2 w^2)/(3 (-3 + 2 w^2))",
        &["2 (v - 1) (v + 1)^3 (3 v - 1)^2/(2 v + 2)^2"],
    ),
    Row {
        id: "Z8_AA",
        description: "rank-1 Z/8 family carrying the two rank-2 sections",
        parent: Some("Z8_BASE"),
        sub: Some(("v3", "(1 + 3 w^2)/(3 + w^2)")),
        a: Some("-31 - 148 w^2 + 214 w^4 - 116 w^6 + 337 w^8"),
        b: Some("256 (-1 + w)^4 (1 + w)^4 (1 + 3 w^2)^4"),
        parent_points: &["-4 (-3 + v) (-1 + v)^2 v^4 (-1 + 3 v)/(1 - 4 v + 2 v^2)^2"],
        torsion: "Z8",
        ..ROW
    },
    Row {
        id: "Z8_R2_A",
        param: "u",
        description: "first rank-2 Z/8 family",
        parent: Some("Z8_AA"),
        sub: Some(("w1", "(11 - u^2)/(10 u)")),
        a: Some(
            "337 u^16 - 41256 u^14 + 4047356 u^12 - 288332632 u^10 + 2363813190 u^8 \
             - 34888248472 u^6 + 59257339196 u^4 - 73087520616 u^2 + 72238942897",
        ),
        b: Some("256 (363 + 34 u^2 + 3 u^4)^4 (11 + u)^4 (-11 + u)^4 (-1 + u)^4 (1 + u)^4"),
        points: &[
            x("2^12 5^2 (-11 + u)^2 (-1 + u)^2 u^2 (1 + u)^2 (11 + u)^2 (-11 + u^2)^2 \
               (363 + 34 u^2 + 3 u^4)^4/(102487 - 303468 u^2 + 43482 u^4 - 2508 u^6 + 7 u^8)^2"),
            x("(-11 + u)^2 (-1 + u)^2 (1 + u)^2 (11 + u)^2 (11 + u^2)^2 \
               (847 + 346 u^2 + 7 u^4)^2/(64 u^2)"),
        ],
        torsion: "Z8",
        generator: Some(x("-8 (-11 + u) (-1 + u) (1 + u) (11 + u) (363 + 34 u^2 + 3 u^4)^3")),
        ..ROW
    },
    Row {
        id: "Z8_R2_B",
        param: "u",
        description: "second rank-2 Z/8 family",
        parent: Some("Z8_AA"),
        sub: Some(("w2", "(29 - 12 u + u^2)/(-29 + u^2)")),
        a: Some(
            "500246412961 - 2069985157080 u + 3162080774436 u^2 - 2895517882032 u^3 \
             + 1873181389706 u^4 - 906769167048 u^5 + 333391978480 u^6 - 93284915496 u^7 \
             + 19860033555 u^8 - 3216721224 u^9 + 396423280 u^10 - 37179432 u^11 \
             + 2648426 u^12 - 141168 u^13 + 5316 u^14 - 120 u^15 + u^16",
        ),
        b: Some("256 (-6 + u)^4 u^4 (-29 + 6 u)^4 (841 - 522 u + 137 u^2 - 18 u^3 + u^4)^4"),
        points: &[
            x("64 (-6 + u)^2 u^2 (-29 + 6 u)^2 (-29 + u^2)^2 (29 - 12 u + u^2)^2 \
               (841 - 522 u + 137 u^2 - 18 u^3 + u^4)^4/(707281 - 292668 u - 200158 u^2 \
               + 168432 u^3 - 46685 u^4 + 5808 u^5 - 238 u^6 - 12 u^7 + u^8)^2"),
            x("(-6 + u)^2 u^2 (-29 + 6 u)^2 (87 - 29 u + 3 u^2)^2 \
               (2523 - 1914 u + 541 u^2 - 66 u^3 + 3 u^4)^2/(4 (29 - 12 u + u^2)^2)"),
        ],
        torsion: "Z8",
        generator: Some(x("8 (-6 + u) u (-29 + 6 u) (841 - 522 u + 137 u^2 - 18 u^3 + u^4)^3")),
        ..ROW
    },
    Row {
        id: "Z26_AA",
        description: "rank-1 Z/2 x Z/6 family carrying the two rank-2 sections",
        parent: Some("Z26_BASE"),
        sub: Some(("v8", "3/(5 - w^2)")),
        a: Some("9472 - 7808 w^2 + 2688 w^4 - 488 w^6 + 37 w^8"),
        b: Some("32 (-8 + w^2)^3 (-5 + w^2) (-2 + w^2)^3 (-16 + 5 w^2)"),
        points: &[xy(
            "-(-5 + w^2) (4 + w^2)^2 (-16 + 5 w^2)",
            "27 (-2 + w)^2 w (2 + w)^2 (-5 + w^2) (4 + w^2) (-16 + 5 w^2)",
        )],
        torsion: "Z2xZ6",
        generator: Some(xy(
            "8 (-8 + w^2) (-5 + w^2) (-2 + w^2) (-16 + 5 w^2)",
            "72 (-2 + w)^2 (2 + w)^2 (-8 + w^2) (-5 + w^2) (-2 + w^2) (-16 + 5 w^2)",
        )),
        ..ROW
    },
    Row {
        id: "Z26_R2_A",
        param: "u",
        description: "first rank-2 Z/2 x Z/6 family",
        parent: Some("Z26_AA"),
        sub: Some(("w1", "2 (7 + u^2)/(-7 - 2 u + u^2)")),
        a: Some(
            "-2 (5764801 + 6588344 u - 21647416 u^2 + 29445864 u^3 - 9604 u^4 \
             + 27969592 u^5 - 44631944 u^6 + 9779112 u^7 + 5909830 u^8 - 1397016 u^9 \
             - 910856 u^10 - 81544 u^11 - 4 u^12 - 1752 u^13 - 184 u^14 - 8 u^15 + u^16)",
        ),
        b: Some(
            "(-7 - 10 u + u^2)^3 (-7 + 2 u + u^2)^3 (49 + 140 u - 106 u^2 - 20 u^3 + u^4) \
             (49 - 28 u + 38 u^2 + 4 u^3 + u^4)^3 (49 - 112 u + 110 u^2 + 16 u^3 + u^4)",
        ),
        points: &[
            x("(49 + 140 u - 106 u^2 - 20 u^3 + u^4) (49 + 14 u + 2 u^2 - 2 u^3 + u^4)^2 \
               (49 - 112 u + 110 u^2 + 16 u^3 + u^4)"),
            x("(-7 - 10 u + u^2)^2 (-7 + 2 u + u^2)^2 (49 - 28 u + 38 u^2 + 4 u^3 + u^4)^3 \
               /(-7 - 2 u + u^2)^2"),
        ],
        torsion: "Z2xZ6",
        generator: Some(x(
            "(-7 - 10 u + u^2) (-7 + 2 u + u^2) (49 + 140 u - 106 u^2 - 20 u^3 + u^4) \
             (49 - 28 u + 38 u^2 + 4 u^3 + u^4) (49 - 112 u + 110 u^2 + 16 u^3 + u^4)",
        )),
        ..ROW
    },
    Row {
        id: "Z26_R2_B",
        param: "u",
        description: "second rank-2 Z/2 x Z/6 family",
        parent: Some("Z26_AA"),
        sub: Some(("w2", "(5 - 2 u + u^2)/(-5 + u^2)")),
        a: Some(
            "1523828125 + 1171250000 u - 3482125000 u^2 - 1970850000 u^3 + 3530367500 u^4 \
             + 1221154000 u^5 - 2018502200 u^6 - 238418640 u^7 + 632792782 u^8 \
             - 47683728 u^9 - 80740088 u^10 + 9769232 u^11 + 5648588 u^12 - 630672 u^13 \
             - 222856 u^14 + 14992 u^15 + 3901 u^16",
        ),
        b: Some(
            "128 (-7 + 2 u + u^2)^3 (-25 - 10 u + 7 u^2)^3 (25 + 5 u - 16 u^2 + u^3 + u^4) \
             (25 + 20 u - 34 u^2 + 4 u^3 + u^4)^3 (275 + 100 u - 230 u^2 + 20 u^3 + 11 u^4)",
        ),
        points: &[
            x("-4 (25 + 5 u - 16 u^2 + u^3 + u^4) (125 - 20 u - 26 u^2 - 4 u^3 + 5 u^4)^2 \
               (275 + 100 u - 230 u^2 + 20 u^3 + 11 u^4)"),
            x("-4 (5 - 2 u + u^2)^4 (-7 + 2 u + u^2) (-25 - 10 u + 7 u^2)/(-5 + u^2)^2 \
               (25 + 5 u - 16 u^2 + u^3 + u^4) (275 + 100 u - 230 u^2 + 20 u^3 + 11 u^4)"),
        ],
        torsion: "Z2xZ6",
        generator: Some(x(
            "32 (-7 + 2 u + u^2) (-25 - 10 u + 7 u^2) (25 + 5 u - 16 u^2 + u^3 + u^4) \
             (25 + 20 u - 34 u^2 + 4 u^3 + u^4) (275 + 100 u - 230 u^2 + 20 u^3 + 11 u^4)",
        )),
        ..ROW
    },
    Row {
        id: "Z6_HADANO",
        param: "v",
        description: "Z/6 model with a rank-1 point, specialized along a = v + 1",
        bindings: &[("a", "v + 1")],
        a: Some(HADANO_A),
        b: Some(HADANO_B),
        points: &[xy(HADANO_P.0, HADANO_P.1)],
        torsion: "Z6",
        // DERIVED: (b^2, a b^2) has order 3 on the uncleared model; adding (0,0)
        // and clearing denominators gives this point of order 6
        generator: Some(x("v^3 (v + 1)^2 (v + 3) (3 v + 1) (3 v + 8)")),
        ..ROW
    },
    Row {
        id: "Z26_HADANO_R1",
        description: "rank-1 Z/2 x Z/6 family from the Z/6 model",
        parent: Some("Z6_HADANO"),
        sub: Some(("v_s", "(1 - w^2)/(-3 + 2 w)")),
        a: Some(
            "2 (-24 - 216 w + 1008 w^2 - 1596 w^3 + 1319 w^4 - 648 w^5 + 198 w^6 \
             - 36 w^7 + 3 w^8)",
        ),
        b: Some(
            "(-4 + w)^3 (-3 + w) (-2 + w)^3 (-1 + w)^3 w (1 + w)^3 (-7 + 3 w) (-2 + 3 w)",
        ),
        points: &[x(
            "-(-4 + w)^3 (-2 + w)^3 (-1 + w)^2 w (1 + w)^2 (-2 + 3 w)/(2 - 2 w + w^2)^2",
        )],
        torsion: "Z2xZ6",
        ..ROW
    },
    Row {
        id: "Z26_R2_C",
        param: "u",
        description: "third rank-2 Z/2 x Z/6 family",
        parent: Some("Z26_HADANO_R1"),
        sub: Some(("w_s", "-(9 + 4 u)/(-3 + u^2)")),
        a: Some(
            "-2 (157464 - 1889568 u - 13594392 u^2 - 38047968 u^3 - 62500248 u^4 \
             - 69622416 u^5 - 57719412 u^6 - 38941344 u^7 - 23353995 u^8 - 12980448 u^9 \
             - 6413268 u^10 - 2578608 u^11 - 771608 u^12 - 156576 u^13 - 18648 u^14 \
             - 864 u^15 + 24 u^16)",
        ),
        b: Some(
            "-(-6 + u)^3 u (2 + u)^3 (-1 + 2 u)^3 (3 + 2 u)^3 (4 + 3 u) (9 + 4 u) \
             (6 + 4 u + u^2)^3 (3 + 4 u + 2 u^2)^3 (21 + 12 u + 2 u^2) (6 + 12 u + 7 u^2)",
        ),
        points: &[
            x("(-6 + u)^2 u (2 + u)^2 (-1 + 2 u) (3 + 2 u) (4 + 3 u) (6 + 4 u + u^2)^3 \
               (6 + 12 u + 7 u^2)"),
            x("-(-6 + u)^2 (2 + u)^2 (-1 + 2 u)^3 (3 + 2 u)^3 (9 + 4 u) \
               /(45 + 48 u + 22 u^2 + 8 u^3 + 2 u^4)^2 (6 + 4 u + u^2)^2 \
               (3 + 4 u + 2 u^2)^3 (21 + 12 u + 2 u^2)"),
        ],
        torsion: "Z2xZ6",
        ..ROW
    },
];
