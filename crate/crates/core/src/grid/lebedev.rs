//! Lebedev angular rules of degree 23, 29 and 41 (194, 302 and 590 points),
//! stored as octahedral orbit generators. Weights sum to one.

use nalgebra::Vector3;

pub(super) struct OrbitSet {
    /// (±1, 0, 0) and permutations, 6 points.
    a1: &'static [f64],
    /// (0, ±a, ±a) with a = 1/√2, 12 points.
    a2: &'static [f64],
    /// (±a, ±a, ±a) with a = 1/√3, 8 points.
    a3: &'static [f64],
    /// (±a, ±a, ±b) and permutations, 24 points each: (a, b, w).
    aab: &'static [(f64, f64, f64)],
    /// (±a, ±b, 0) and permutations, 24 points each: (a, b, w).
    ab0: &'static [(f64, f64, f64)],
    /// (±a, ±b, ±c) and permutations, 48 points each: (a, b, c, w).
    abc: &'static [(f64, f64, f64, f64)],
}

const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn push_signed(out: &mut Vec<(Vector3<f64>, f64)>, v: [f64; 3], w: f64) {
    // every sign combination of the nonzero entries
    for mask in 0..8u8 {
        if (0..3).any(|k| v[k] == 0.0 && mask & (1 << k) != 0) {
            continue;
        }
        let s = |k: usize| if mask & (1 << k) != 0 { -v[k] } else { v[k] };
        out.push((Vector3::new(s(0), s(1), s(2)), w));
    }
}

fn push_perms(out: &mut Vec<(Vector3<f64>, f64)>, v: [f64; 3], w: f64) {
    let mut seen: Vec<[u64; 3]> = Vec::new();
    for p in PERMS {
        let q = [v[p[0]], v[p[1]], v[p[2]]];
        let key = q.map(f64::to_bits);
        if !seen.contains(&key) {
            seen.push(key);
            push_signed(out, q, w);
        }
    }
}

impl OrbitSet {
    pub(super) fn expand(&self) -> Vec<(Vector3<f64>, f64)> {
        let mut out = Vec::new();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let t = 1.0 / 3f64.sqrt();
        for &w in self.a1 {
            push_perms(&mut out, [1.0, 0.0, 0.0], w);
        }
        for &w in self.a2 {
            push_perms(&mut out, [0.0, h, h], w);
        }
        for &w in self.a3 {
            push_perms(&mut out, [t, t, t], w);
        }
        for &(a, b, w) in self.aab {
            push_perms(&mut out, [a, a, b], w);
        }
        for &(a, b, w) in self.ab0 {
            push_perms(&mut out, [a, b, 0.0], w);
        }
        for &(a, b, c, w) in self.abc {
            push_perms(&mut out, [a, b, c], w);
        }
        out
    }
}

pub(super) const LEBEDEV_194: OrbitSet = OrbitSet {
    a1: &[0.001782340447244611],
    a2: &[0.005716905949977102],
    a3: &[0.005573383178848737],
    aab: &[
        (0.6712973442695226, 0.3141969941825863, 0.005608704082587997),
        (0.2892465627575439, 0.9125090968674737, 0.005158237711805383),
        (0.4446933178717437, 0.7774932193147671, 0.005518771467273614),
        (0.1299335447650067, 0.9829723027072532, 0.004106777028169394),
    ],
    ab0: &[
        (0.9383192181375916, 0.3457702197611283, 0.005051846064614808),
    ],
    abc: &[
        (0.8360360154824589, 0.525118572443642, 0.159041710538353, 0.005530248916233094),
    ],
};

pub(super) const LEBEDEV_302: OrbitSet = OrbitSet {
    a1: &[0.0008545911725128148],
    a2: &[],
    a3: &[0.003599119285025571],
    aab: &[
        (0.3515640345570105, 0.8676436245440834, 0.003449788424305883),
        (0.6566329410219612, 0.37103417838482095, 0.003604822601419882),
        (0.4729054132581005, 0.7434520429875557, 0.003576729661743367),
        (0.09618308522614784, 0.9907056213794081, 0.002352101413689164),
        (0.2219645236294178, 0.9494543172264431, 0.003108953122413675),
        (0.7011766416089545, 0.12923867271051442, 0.003650045807677255),
    ],
    ab0: &[
        (0.964408914879206, 0.2644152887060663, 0.002982344963171804),
        (0.8203264198277593, 0.5718955891878961, 0.00360082093221646),
    ],
    abc: &[
        (0.8000727494073951, 0.5448677372580774, 0.2510034751770465, 0.003571540554273387),
        (0.9024425295330004, 0.4127724083168531, 0.1233548532583327, 0.00339231220500617),
    ],
};

pub(super) const LEBEDEV_590: OrbitSet = OrbitSet {
    a1: &[0.0003095121295306187],
    a2: &[],
    a3: &[0.001852379698597489],
    aab: &[
        (0.7040954938227469, 0.09219040707689825, 0.001871790639277744),
        (0.6807744066455244, 0.2703560883591648, 0.001858812585438317),
        (0.6372546939258752, 0.4333738687771544, 0.0018520288282962132),
        (0.5044419707800358, 0.700768575373573, 0.001846715956151242),
        (0.4215761784010967, 0.8028368773352738, 0.001818471778162769),
        (0.3317920736472123, 0.8830787279341326, 0.001749564657281154),
        (0.2384736701421887, 0.9414141582204025, 0.001617210647254411),
        (0.1459036449157763, 0.9784805837626939, 0.001384737234851692),
        (0.06095034115507196, 0.9962781297540164, 0.000976433116505105),
    ],
    ab0: &[
        (0.791101929626902, 0.6116843442009876, 0.001857161196774078),
        (0.918045287711454, 0.3964755348199858, 0.0017051539963958643),
        (0.9850133350280019, 0.1724782009907724, 0.001300321685886048),
    ],
    abc: &[
        (0.7493106119041159, 0.561026380862206, 0.3518280927733519, 0.001842866472905286),
        (0.8400474883590504, 0.474239284255198, 0.263471665593795, 0.001802658934377451),
        (0.7803207424799203, 0.598412649788538, 0.1816640840360209, 0.00184983056044366),
        (0.9092134750923736, 0.3791035407695563, 0.1720795225656878, 0.001713904507106709),
        (0.9571020743100725, 0.2778673190586244, 0.08213021581932511, 0.001555213603396808),
        (0.8593798558907212, 0.5033564271075117, 0.08999205842074876, 0.0018022391280085248),
    ],
};
