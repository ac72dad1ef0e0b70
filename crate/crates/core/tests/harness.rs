use cyclicdec::harness::{
    build_decoder, load_weights, measure, render_svg, run_experiment, save_weights, wilson, DecoderKind,
    ExperimentConfig, ExperimentResult, MatrixKind, Metric, CSV_HEADER,
};
use cyclicdec::listdec::{extend_with_parity, extended_is_codeword};
use cyclicdec::{AffinePermutationSet, CyclicCode, Decoder, Error, TannerGraph, Variant, WeightBank};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn code(id: &str) -> CyclicCode {
    CyclicCode::from_id(id.parse().unwrap()).unwrap()
}

fn small_config() -> ExperimentConfig {
    ExperimentConfig {
        code: "BCH(15,7)".parse().unwrap(),
        t: 3,
        snr_db: vec![2.0, 3.0],
        samples: 600,
        seed: 9,
        record_time: false,
        ..ExperimentConfig::default()
    }
}

#[test]
fn weight_files_round_trip_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let c = code("BCH(63,36)");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (matrix, variant) in [(MatrixKind::Cyclic, Variant::Cyclic), (MatrixKind::Std, Variant::FeedForward)] {
        let g = TannerGraph::new(&matrix.build(&c, 0)).unwrap();
        let bank = WeightBank::random(&g, variant, 5, -3.0, 3.0, &mut rng).unwrap();
        let path = dir.path().join(format!("{matrix}.json"));
        save_weights(&path, c.id(), matrix, &bank).unwrap();
        let back = load_weights(&path).unwrap();
        assert_eq!(back.bank, bank);
        assert_eq!(back.code, "BCH(63,36)");
        assert_eq!(back.matrix, matrix.to_string());
    }
}

#[test]
fn mismatched_or_corrupt_weights_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let c45 = code("BCH(63,45)");
    let g = TannerGraph::new(&c45.parity_cyclic).unwrap();
    let path = dir.path().join("w45.json");
    save_weights(&path, c45.id(), MatrixKind::Cyclic, &WeightBank::ones(&g, Variant::Cyclic, 5).unwrap()).unwrap();

    let cfg = ExperimentConfig {
        code: "BCH(63,36)".parse().unwrap(),
        decoder: DecoderKind::Cyclic,
        matrix: MatrixKind::Cyclic,
        weights: Some(path.clone()),
        ..ExperimentConfig::default()
    };
    let err = build_decoder(&cfg, &code("BCH(63,36)")).unwrap_err();
    assert!(matches!(err, Error::Shape(_)), "{err}");
    assert_eq!(err.exit_code(), 3);

    let wrong_t = ExperimentConfig { code: c45.id(), t: 4, ..cfg.clone() };
    assert!(build_decoder(&wrong_t, &c45).is_err());
    let ok = ExperimentConfig { code: c45.id(), ..cfg.clone() };
    assert!(build_decoder(&ok, &c45).is_ok());

    let text = std::fs::read_to_string(&path).unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, text.replace("\"version\": 1", "\"version\": 7")).unwrap();
    assert!(matches!(load_weights(&bad), Err(Error::WeightFile { .. })));
    std::fs::write(&bad, &text[..text.len() / 2]).unwrap();
    assert!(matches!(load_weights(&bad), Err(Error::WeightFile { .. })));
}

#[test]
fn config_errors_map_to_exit_code_two() {
    for toml in [
        "samples = 0",
        "decoder = \"cyclic\"\nmatrix = \"std\"\nweights = \"w.json\"",
        "decoder = \"ff\"",
        "list_size = 99",
        "bogus_key = 1",
        "code = \"BCH(63,44)\"",
    ] {
        match ExperimentConfig::from_toml_str(toml) {
            Err(e) => assert_eq!(e.exit_code(), 2, "{toml}: {e}"),
            Ok(cfg) => {
                let e = run_experiment(&cfg).unwrap_err();
                assert_eq!(e.exit_code(), 2, "{toml}: {e}");
            }
        }
    }
    let cfg = ExperimentConfig::from_toml_str("code = \"PRM(63,22)\"\nsnr_db = [1.5, 2.5]\nt = 4").unwrap();
    assert_eq!(cfg.code.to_string(), "PRM(63,22)");
    assert_eq!(cfg.snr_db, vec![1.5, 2.5]);
}

#[test]
fn csv_output_is_reproducible_and_parses_back() {
    let cfg = small_config();
    let mut a = Vec::new();
    run_experiment(&cfg).unwrap().write_csv(&mut a).unwrap();
    let mut b = Vec::new();
    run_experiment(&cfg).unwrap().write_csv(&mut b).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a.clone()).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    let back = ExperimentResult::read_csv(&a[..]).unwrap();
    assert_eq!(back.rows.len(), 2);
    let mut c = Vec::new();
    back.write_csv(&mut c).unwrap();
    assert_eq!(a, c);
    let svg = render_svg(&back, Metric::Ber);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn noiseless_channel_gives_zero_errors() {
    let c = code("BCH(63,45)");
    let dec = Decoder::vanilla(TannerGraph::new(&c.parity_std).unwrap(), 5, 0);
    let m = measure(&c, &dec, None, 100.0, 500, 3, false).unwrap();
    assert_eq!((m.bit_errors, m.frame_errors), (0, 0));
    assert_eq!(m.ber_interval().0, 0.0);
}

#[test]
fn all_zero_and_random_codewords_agree_statistically() {
    // BP is symmetric in the transmitted codeword, so both modes estimate the
    // same BER.
    let c = code("BCH(15,7)");
    let dec = Decoder::vanilla(TannerGraph::new(&c.parity_cyclic).unwrap(), 3, 0);
    let z = measure(&c, &dec, None, 3.0, 20_000, 1, true).unwrap();
    let r = measure(&c, &dec, None, 3.0, 20_000, 2, false).unwrap();
    let (zl, zh) = z.ber_interval();
    let (rl, rh) = r.ber_interval();
    assert!(zl <= rh && rl <= zh, "{:?} vs {:?}", (zl, zh), (rl, rh));
}

#[test]
fn wilson_interval_brackets_the_estimate() {
    for (k, n) in [(0u64, 10u64), (3, 10), (10, 10), (500, 100_000)] {
        let (lo, hi) = wilson(k, n);
        let p = k as f64 / n as f64;
        assert!(lo <= p && p <= hi && (0.0..=1.0).contains(&lo) && hi <= 1.0);
    }
}

#[test]
fn extended_prm_codes_are_affine_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for id in ["PRM(15,5)", "PRM(15,11)", "PRM(31,16)"] {
        let c = code(id);
        let perms = AffinePermutationSet::new(&c.field);
        for _ in 0..10 {
            let ext = extend_with_parity(&c.random_codeword(&mut rng));
            for p in perms.perms() {
                let moved: Vec<u8> = p.iter().map(|&v| ext[v]).collect();
                assert!(extended_is_codeword(&c, &moved), "{id}");
            }
        }
    }
}
