//! Values frozen from an independent 50-digit mpmath computation.
//!
//! Evaluation points are the binary doubles nearest the decimals shown
//! (which is what the oracle was given), so they are built with `from_f64`.

use zeta_moments_core::moment::{c_coefficients, d_coefficients};
use zeta_moments_core::ring::MathCtx;
use zeta_moments_core::stieltjes::{compute_gamma, StieltjesTable};
use zeta_moments_core::zeta::{self, EvalConfig};
use zeta_moments_core::{Complex, Numeric, Real};

const PREC: usize = 192;

fn real(s: &str) -> Real {
    MathCtx::new().parse(s, 256).unwrap()
}

fn close(got: &Real, want: &str, rel_digits: i32) {
    let w = real(want);
    let scale = w.abs().to_f64().max(1.0);
    let err = (got - &w).abs().to_f64() / scale;
    assert!(
        err < 10f64.powi(-rel_digits),
        "got {} want {want} (rel err {err:e})",
        got.to_sci(45)
    );
}

fn close_c(got: &Complex, re: &str, im: &str, rel_digits: i32) {
    let w = Complex::new(real(re), real(im));
    let scale = w.abs().to_f64().max(1e-30);
    let err = (got - &w).abs().to_f64() / scale;
    assert!(
        err < 10f64.powi(-rel_digits),
        "got {} + {}i want {re} + {im}i (rel err {err:e})",
        got.re.to_sci(40),
        got.im.to_sci(40)
    );
}

struct Point {
    s: (f64, f64),
    derivs: [(&'static str, &'static str); 4],
}

const POINTS: &[Point] = &[
    Point {
        s: (0.5, 14.134725141734694),
        derivs: [
            ("-1.05e-16", "6.59e-16"), // not compared: ζ is tiny here
            (
                "0.7832965118670311218312742243982802119598",
                "0.1246998297481705728689074741680461029254",
            ),
            (
                "-0.6144097945772294559230562893929870789829",
                "-0.2297836431124338795091616931741752206554",
            ),
            (
                "0.4705131309901184393992477492586467044664",
                "0.3206247737289610177509079759763310845417",
            ),
        ],
    },
    Point {
        s: (0.5, 20.0),
        derivs: [
            (
                "0.4299138604378433721577396706245034568405",
                "-1.064291443080589112727395193068938474842",
            ),
            (
                "0.7145067908437759923766753826002555503842",
                "1.005240883947013155472724076606905180816",
            ),
            (
                "-0.8358466471890557026727437916139393253867",
                "-1.065832303879026684569169854454153454065",
            ),
            (
                "0.9257606937692894641892164874013685751865",
                "1.243896006120766188491778834572441265315",
            ),
        ],
    },
    Point {
        s: (2.0, 3.0),
        derivs: [
            (
                "0.7980219851462757206222945007248126860252",
                "-0.1137443080529385002159133658573150755701",
            ),
            (
                "0.1401295901174864802463059119556927829317",
                "0.02151467827919665819586930508700018722344",
            ),
            (
                "-0.06873067654197788524061080616049951373131",
                "0.03964773384107830673717339982379676624668",
            ),
            (
                "-0.01265602166994633388928927796227870886699",
                "-0.05421488858785471807125909946546653746719",
            ),
        ],
    },
    Point {
        s: (-0.5, 3.0),
        derivs: [
            (
                "0.3529138798192872527249093421483709258638",
                "0.01212495441603698204867151385757148253594",
            ),
            (
                "0.1648172939029697430439965920118051442814",
                "-0.09773452530610937157922047392591119447772",
            ),
            (
                "0.03100766511277686651512043759698255068807",
                "-0.008465187061522110970870749689556040266475",
            ),
            (
                "0.009226414829360195045379099123704766543664",
                "0.06005803436545324852978417970097553631401",
            ),
        ],
    },
    Point {
        s: (-3.25, 1.5),
        derivs: [
            (
                "0.01052102411426599998077180941017178661485",
                "0.02518991842690184588070672523457320520528",
            ),
            (
                "0.03339483914269816195400183727978858930664",
                "0.00008669615193493984927312520456444705831832",
            ),
            (
                "0.01300390690940840495505524813465703877291",
                "-0.03125348967417031264500900044931696183341",
            ),
            (
                "-0.01594345763850092223007458130946023135457",
                "-0.02173278019658846313652174860330584143075",
            ),
        ],
    },
    Point {
        s: (0.3, 25.0),
        derivs: [
            (
                "-0.2882016695874612418982670174698277682256",
                "-0.129625180496894286415988502210424939463",
            ),
            (
                "1.6626838778308567055789202358367732469",
                "0.7008679864532181422818730316857122013467",
            ),
            (
                "-2.138907345859954641031451732990655209021",
                "-1.366878256571002600908910465562758837174",
            ),
            (
                "2.735377012150327271041926293950181681186",
                "2.247796914595272973681081470023391632495",
            ),
        ],
    },
];

#[test]
fn derivatives_by_cauchy_integral() {
    let cfg = EvalConfig::new(PREC);
    for p in POINTS {
        let s = Complex::from_f64(p.s.0, p.s.1, PREC);
        for (k, (re, im)) in p.derivs.iter().enumerate() {
            let v = if k == 0 {
                zeta::zeta(&s, &cfg)
            } else {
                zeta::zeta_deriv(&s, k, &cfg)
            }
            .unwrap();
            if k == 0 && p.s.1 == 14.134725141734694 {
                assert!(v.abs().to_f64() < 1e-15);
                continue;
            }
            close_c(&v, re, im, 36);
        }
    }
}

#[test]
fn jets_on_the_right_half() {
    // the Euler–Maclaurin jet is only used for Re s > 0
    let cfg = EvalConfig::new(PREC);
    for p in POINTS.iter().filter(|p| p.s.0 > 0.0) {
        let s = Complex::from_f64(p.s.0, p.s.1, PREC);
        let jet = zeta::zeta_jet(&s, 3, &cfg).unwrap();
        for (k, (re, im)) in p.derivs.iter().enumerate().skip(1) {
            close_c(&jet[k], re, im, 38);
        }
    }
}

#[test]
fn special_values() {
    let cfg = EvalConfig::new(256);
    let z3 = zeta::zeta(&Complex::from_f64(3.0, 0.0, 256), &cfg).unwrap();
    close(&z3.re, "1.2020569031595942853997381615114499907649862923405000171803", 50);
    let zp0 = zeta::zeta_deriv(&Complex::zero(256), 1, &cfg).unwrap();
    close(&zp0.re, "-0.91893853320467274178032973640561763986139747363778402312463", 50);
    assert!(zp0.im.abs().to_f64() < 1e-60);
}

#[test]
fn derivative_at_the_first_zero() {
    let cfg = EvalConfig::new(PREC);
    let s = Complex::new(Real::from_f64(0.5, PREC), real("14.13472514173469379045725198356247027078"));
    let d = zeta::zeta_deriv(&s, 1, &cfg).unwrap();
    close_c(
        &d,
        "0.7832965118670309286496572092390650747961",
        "0.1246998297481710894099284915089053728433",
        36,
    );
    close(&d.norm_sqr(), "0.6291034730422805798165590645366163633367", 36);
}

#[test]
fn stieltjes_constants() {
    let table = StieltjesTable::load_bundled(10, PREC).unwrap();
    for (n, want) in [
        (1, "-0.07281584548367672486058637587490131913774"),
        (5, "0.0007933238173010627017533348774444448307315"),
        (10, "0.0002053328149090647946837222892370653029599"),
    ] {
        close(table.get(n).unwrap(), want, 40);
        close(&compute_gamma(n, PREC).unwrap(), want, 40);
    }
}

#[test]
fn laurent_coefficients_against_contour_quadrature() {
    let gammas = StieltjesTable::load_bundled(20, PREC).unwrap().into_values();
    let ring = Numeric::with_stieltjes(PREC, gammas).unwrap();

    // ζ'(s)² / s about s = 1 (pole of order 4)
    let c = c_coefficients(&ring, 1, 0, 5).unwrap();
    assert_eq!(c.pole_order, 4);
    let want = [
        "1",
        "-1",
        "0.85436830903264655027882724825019736",
        "-0.8349875826469019133097664761797723",
        "0.84234356442070794326498190520402617",
    ];
    for (got, w) in c.values.iter().zip(want) {
        close(got, w, 33);
    }

    // ζ''(s) ζ'(s) / s (pole of order 5)
    let d = d_coefficients(&ring, 2, 1, 5).unwrap();
    assert_eq!(d.pole_order, 5);
    let want = [
        "-2",
        "2",
        "-1.8543683090326465502788272482501974",
        "1.8446779458397742317942968622149848",
        "-1.8446779458397742317942968622149848",
    ];
    for (got, w) in d.values.iter().zip(want) {
        close(got, w, 33);
    }
}
