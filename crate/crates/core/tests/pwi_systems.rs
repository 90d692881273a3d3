use std::f64::consts::PI;

use pwilab::constants::cone;
use pwilab::embedding::TrivialEmbedding;
use pwilab::experiments::{build_return_strip, case_orbit, cone_return, golden_cone_family};
use pwilab::io::{export_orbit, import_orbit, read_json};
use pwilab::pwi::induced_pwi;
use pwilab::{Case, Complex64, Iet, Permutation, Pwi};

// The seeds sit on the ray arg = π − β, the edge of the section, so the
// curves are followed from their first image under the strip.
fn boundary_seeds() -> Vec<Complex64> {
    let strip = build_return_strip();
    cone::BOUNDARY_RADII
        .iter()
        .map(|&r| {
            strip
                .pwi
                .apply(Complex64::from_polar(r, PI - cone::BETA))
                .unwrap()
                .0
        })
        .collect()
}

#[test]
fn boundary_curves_stay_in_band() {
    let strip = build_return_strip();
    let family = golden_cone_family();
    let section = &family.pwi.atoms()[1..3];
    for z0 in boundary_seeds() {
        let rec = strip.pwi.orbit(z0, 100_000, 0);
        assert_eq!(rec.escaped_at, None);
        for z in &rec.points {
            assert!(z.im > 0.35 && z.im < 0.55, "{z} left the band");
            assert!(section.iter().any(|r| r.contains(*z)));
        }
    }
}

#[test]
fn strip_tracks_cone_return() {
    let strip = build_return_strip();
    let family = golden_cone_family();
    for z0 in boundary_seeds().into_iter().chain([cone::CURVE_SEED]) {
        let mut s = z0;
        let mut r = z0;
        for _ in 0..10_000 {
            s = strip.pwi.apply(s).unwrap().0;
            r = match cone_return(&family, r, 100) {
                Ok((_, w)) => w,
                Err(e) => panic!("{z0} {r}: {e}"),
            };
            assert!((s - r).norm() < 1e-10);
        }
    }
}

#[test]
fn induced_system_matches_induced_iet() {
    let perms = [
        vec![2, 1],
        vec![3, 2, 1],
        vec![4, 2, 1, 3],
        vec![2, 4, 1, 3],
    ];
    let lengths = [
        [0.3, 0.7, 0.0, 0.0],
        [0.7, 0.3, 0.0, 0.0],
        [0.31, 0.17, 0.23, 0.29],
        [0.2, 0.33, 0.19, 0.28],
    ];
    for p in &perms {
        for l in &lengths {
            let d = p.len();
            let Ok(f) = Iet::new(l[..d].to_vec(), Permutation::new(p.clone()).unwrap()) else {
                continue;
            };
            let emb = TrivialEmbedding::linear(&f, 1.0).unwrap();
            let induced = induced_pwi(emb.pwi(), &f).unwrap();
            let sub = &induced.step.iet;
            for k in 0..500 {
                let x = (k as f64 + 0.5) / 500.0 * sub.total_length();
                let w = emb.h(x);
                let (img, piece) = induced.pwi.apply(w).unwrap();
                assert!((img - emb.h(sub.forward(x).unwrap())).norm() < 1e-10);
                assert_eq!(induced.symbols[piece], sub.locate(x).unwrap());
            }
        }
    }
}

#[test]
fn orbit_csv_file_round_trip() {
    let rec = case_orbit(Case::Paper3pwi, 2_000, 100);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("orbit.csv");
    export_orbit(&rec, &path).unwrap();
    let back = import_orbit(&path).unwrap();
    assert_eq!(back.start, rec.start);
    assert_eq!(back.atoms, rec.atoms);
    assert!(back.points.iter().zip(&rec.points).all(|(a, b)| a == b));
}

#[test]
fn pwi_json_file_round_trip() {
    let sys = golden_cone_family();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cone.json");
    std::fs::write(&path, serde_json::to_string_pretty(&sys.pwi).unwrap()).unwrap();
    let back: Pwi = read_json(&path).unwrap();
    assert_eq!(back.d(), 4);
    let mut z = Complex64::new(-0.11, 0.42);
    for _ in 0..1000 {
        let (a, i) = back.apply(z).unwrap();
        let (b, j) = sys.pwi.apply(z).unwrap();
        assert_eq!(i, j);
        assert!((a - b).norm() < 1e-14);
        z = b;
    }
}
