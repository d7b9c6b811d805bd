mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::*;
use logconn::criterion::{rigid_criterion, trace_necessity};
use logconn::endalg::{global_end_basis, is_rigid, EndoSection};
use logconn::obstruction::{atiyah_pair, functional};
use logconn::synth::{solution_space_dim, CheckKind, SynthesisSystem};
use logconn::{
    decide_existence, synthesize, validate_instance, verify, Mat, OneForm, Point, Poly, Scalar,
    SplittingType,
};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

fn random_mat(rng: &mut rand_chacha::ChaCha8Rng, r: usize) -> Mat {
    let mut m = Mat::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            m[(i, j)] = small_rational(rng, 5);
        }
    }
    m
}

fn add_sections(a: &EndoSection, b: &EndoSection) -> EndoSection {
    a.sub(&EndoSection::zero(b.rank()).sub(b))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn residue_theorem_and_partial_fractions(seed in any::<u64>()) {
        let kf = known_form(&mut rng(seed));
        for (x, res) in kf.poles.iter().zip(&kf.residues) {
            prop_assert_eq!(&kf.form.residue_at(&Point::Finite(x.clone())), res);
        }
        prop_assert_eq!(kf.form.residue_at(&Point::Infinity), kf.residue_at_infinity.clone());
    }

    #[test]
    fn chart_change_is_an_involution(seed in any::<u64>()) {
        let kf = known_form(&mut rng(seed));
        let w = kf.form.to_infinity_chart();
        prop_assert_eq!(w.to_infinity_chart(), kf.form.clone());
        prop_assert_eq!(w.residue_at(&Point::Finite(Scalar::zero())), kf.residue_at_infinity.clone());
        for (x, res) in kf.poles.iter().zip(&kf.residues) {
            if !x.is_zero() {
                prop_assert_eq!(&w.residue_at(&Point::Finite(x.recip())), res);
            }
        }
    }

    #[test]
    fn holomorphic_away_from_poles(seed in any::<u64>(), y in -20i64..20) {
        let kf = known_form(&mut rng(seed));
        let y = Scalar::new(y, 7);
        prop_assume!(!kf.poles.contains(&y));
        prop_assert!(kf.form.is_holomorphic_at(&Point::Finite(y)));
    }

    #[test]
    fn functional_is_linear_in_sections(seed in any::<u64>()) {
        let mut g = rng(seed);
        let inst = random_instance(&mut g, Mode::Generic, 3, 3, 3, 5);
        let basis = global_end_basis(&inst.st);
        let b1 = basis.choose(&mut g).unwrap();
        let b2 = basis.choose(&mut g).unwrap();
        let sum = add_sections(b1, b2);
        prop_assert_eq!(
            functional(&inst, &sum),
            &functional(&inst, b1) + &functional(&inst, b2)
        );
    }

    #[test]
    fn functional_is_affine_in_residues(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = random_instance(&mut g, Mode::Generic, 3, 3, 3, 5);
        let r = a.rank();
        let extra: Vec<Mat> = a.points.iter().map(|_| random_mat(&mut g, r)).collect();
        let b_res: Vec<(Scalar, Mat)> = a.points.iter().cloned().zip(extra.iter().cloned()).collect();
        let sum_res: Vec<(Scalar, Mat)> = a
            .residues
            .iter()
            .zip(&extra)
            .map(|((x, m), e)| (x.clone(), m + e))
            .collect();
        let b = validate_instance(a.st.degrees(), a.points.points(), &b_res).unwrap();
        let s = validate_instance(a.st.degrees(), a.points.points(), &sum_res).unwrap();
        for beta in global_end_basis(&a.st).iter() {
            let lhs = &functional(&s, beta) + &atiyah_pair(&a.st, beta);
            prop_assert_eq!(lhs, &functional(&a, beta) + &functional(&b, beta));
        }
    }

    #[test]
    fn identity_pairs_to_degree_plus_trace(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), Mode::Generic, 4, 3, 4, 5);
        let id = EndoSection::identity(inst.rank());
        prop_assert!(id.is_global_section(&inst.st));
        let expected = &Scalar::from_int(inst.st.degree()) + &inst.residues.total_trace();
        prop_assert_eq!(functional(&inst, &id), expected);
    }

    #[test]
    fn atiyah_pair_vanishes_off_diagonal(degrees in prop::collection::vec(-3i64..=3, 1..=4)) {
        let st = SplittingType::new(degrees).unwrap();
        for beta in global_end_basis(&st).iter() {
            let diagonal = (0..st.rank()).any(|i| !beta.entry(i, i).is_zero());
            if !diagonal {
                prop_assert!(atiyah_pair(&st, beta).is_zero());
            }
        }
    }

    #[test]
    fn summand_order_does_not_matter(seed in any::<u64>()) {
        let mut g = rng(seed);
        let inst = random_instance(&mut g, Mode::Generic, 4, 3, 3, 5);
        let r = inst.rank();
        let mut sigma: Vec<usize> = (0..r).collect();
        sigma.shuffle(&mut g);
        let raw: Vec<i64> = sigma.iter().map(|&k| inst.st.degrees()[k]).collect();
        let res: Vec<(Scalar, Mat)> = inst
            .residues
            .iter()
            .map(|(x, m)| {
                let mut p = Mat::zeros(r, r);
                for k in 0..r {
                    for l in 0..r {
                        p[(k, l)] = m[(sigma[k], sigma[l])].clone();
                    }
                }
                (x.clone(), p)
            })
            .collect();
        let permuted = validate_instance(&raw, inst.points.points(), &res).unwrap();
        prop_assert_eq!(&permuted.st, &inst.st);
        prop_assert_eq!(permuted.residues.total_trace(), inst.residues.total_trace());
        prop_assert_eq!(decide_existence(&permuted), decide_existence(&inst));
    }

    #[test]
    fn rigidity_ignores_the_point(seed in any::<u64>(), x in -9i64..9, y in -9i64..9) {
        let mut g = rng(seed);
        let a = random_degrees(&mut g, 3, 3);
        let st = SplittingType::new(a.clone()).unwrap();
        let m = if g.gen_bool(0.3) {
            Mat::scalar(a.len(), small_rational(&mut g, 5))
        } else {
            random_mat(&mut g, a.len())
        };
        let (x, y) = (Scalar::new(x, 2), Scalar::new(y, 3));
        prop_assert_eq!(is_rigid(&st, &x, &m), is_rigid(&st, &y, &m));
    }

    #[test]
    fn solution_space_matches_kernel(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), Mode::Feasible, 4, 3, 4, 5);
        prop_assume!(decide_existence(&inst));
        prop_assert_eq!(SynthesisSystem::build(&inst).kernel_dim(), solution_space_dim(&inst.st));
    }

    #[test]
    fn certificates_are_sound(seed in any::<u64>()) {
        let inst = random_instance(&mut rng(seed), Mode::Feasible, 4, 3, 4, 5);
        prop_assume!(decide_existence(&inst));
        let conn = synthesize(&inst).unwrap();
        prop_assert!(verify(&conn, &inst.residues).passed);
        for (x, m) in inst.residues.iter() {
            prop_assert_eq!(&conn.residue_matrix(x), m);
        }
        let total = &Scalar::from_int(conn.st.degree()) + &conn.residues().total_trace();
        prop_assert!(total.is_zero());
    }

    #[test]
    fn tampered_certificates_are_rejected(seed in any::<u64>()) {
        let mut g = rng(seed);
        let inst = random_instance(&mut g, Mode::Feasible, 3, 3, 3, 5);
        prop_assume!(decide_existence(&inst));
        let mut conn = synthesize(&inst).unwrap();
        let r = conn.rank();
        let k = g.gen_range(0..r * r);
        let spread = inst.st.degrees()[0] - inst.st.degrees()[r - 1];
        let junk = OneForm::polynomial(Poly::monomial(Scalar::one(), (spread + 2) as usize));
        conn.omega0[k] = &conn.omega0[k] + &junk;
        let rep = verify(&conn, &inst.residues);
        prop_assert!(rep.failed(CheckKind::ChartHolomorphy));
        prop_assert!(!rep.passed);
    }

    #[test]
    fn decision_synthesis_and_rigid_criterion_agree(seed in any::<u64>(), mode in 0usize..4) {
        let inst = random_instance(&mut rng(seed), MODES[mode], 4, 3, 4, 7);
        let decided = decide_existence(&inst);
        prop_assert!(!decided || trace_necessity(&inst));
        match synthesize(&inst) {
            Ok(conn) => {
                prop_assert!(decided);
                prop_assert!(verify(&conn, &inst.residues).passed);
            }
            Err(_) => prop_assert!(!decided),
        }
        if let Ok(v) = rigid_criterion(&inst) {
            prop_assert_eq!(v, decided);
        }
    }
}
