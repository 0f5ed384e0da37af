//! Exercise the C ABI from Rust: handle lifecycle, value agreement with
//! the underlying library, and status codes on every error path.

use prwalk_ffi::*;

fn new_params(eps_r: f64, eps_l: f64) -> *mut PrwParams {
    let mut out: *mut PrwParams = std::ptr::null_mut();
    let status = unsafe { prw_params_new(eps_r, eps_l, &mut out) };
    assert_eq!(status, PrwStatus::Ok);
    assert!(!out.is_null());
    out
}

#[test]
fn params_lifecycle_and_accessors() {
    let params = new_params(0.7, 0.4);
    let (mut er, mut el) = (0.0, 0.0);
    assert_eq!(
        unsafe { prw_params_get(params, &mut er, &mut el) },
        PrwStatus::Ok
    );
    assert_eq!((er, el), (0.7, 0.4));

    let (mut pp, mut pm) = (0.0, 0.0);
    assert_eq!(
        unsafe { prw_stationary(params, &mut pp, &mut pm) },
        PrwStatus::Ok
    );
    let stat = prwalk::ModelParams::new(0.7, 0.4).unwrap().stationary();
    assert_eq!((pp, pm), (stat.p_plus, stat.p_minus));
    unsafe { prw_params_free(params) };
    unsafe { prw_params_free(std::ptr::null_mut()) }; // null is a no-op
}

#[test]
fn invalid_parameters_are_rejected() {
    let mut out: *mut PrwParams = std::ptr::null_mut();
    assert_eq!(
        unsafe { prw_params_new(1.5, 0.5, &mut out) },
        PrwStatus::InvalidParameter
    );
    assert_eq!(
        unsafe { prw_params_new(0.5, 0.0, &mut out) },
        PrwStatus::InvalidParameter
    );
    assert_eq!(
        unsafe { prw_params_new(0.5, 0.5, std::ptr::null_mut()) },
        PrwStatus::NullPointer
    );
}

#[test]
fn moments_and_point_probabilities_match_library() {
    let params = new_params(0.7, 0.4);
    let reference = prwalk::ModelParams::new(0.7, 0.4).unwrap();

    let mut v = 0.0;
    assert_eq!(unsafe { prw_mean_x(params, 10, &mut v) }, PrwStatus::Ok);
    assert_eq!(v, prwalk::genfunc::mean_x(10, &reference));
    assert_eq!(unsafe { prw_mean_k(params, 10, &mut v) }, PrwStatus::Ok);
    assert_eq!(v, prwalk::genfunc::mean_k(10, &reference));

    assert_eq!(
        unsafe { prw_joint_prob(params, 4, 2, 3, &mut v) },
        PrwStatus::Ok
    );
    assert_eq!(v, prwalk::joint_pmf(4, 2, 3, &reference));
    // off support: zero, not an error
    assert_eq!(
        unsafe { prw_joint_prob(params, 4, 3, 1, &mut v) },
        PrwStatus::Ok
    );
    assert_eq!(v, 0.0);

    unsafe { prw_params_free(params) };
}

#[test]
fn pmf_handle_matches_library_table() {
    let params = new_params(0.6, 0.3);
    let mut pmf: *mut PrwPmf = std::ptr::null_mut();
    assert_eq!(unsafe { prw_pmf_new(params, 8, &mut pmf) }, PrwStatus::Ok);

    let reference = prwalk::JointPmf::closed_form(8, &prwalk::ModelParams::new(0.6, 0.3).unwrap());
    assert_eq!(unsafe { prw_pmf_n(pmf) }, 8);
    assert_eq!(unsafe { prw_pmf_len(pmf) }, reference.support_len() as u64);

    let mut v = 0.0;
    for entry in reference.entries() {
        assert_eq!(
            unsafe { prw_pmf_prob(pmf, entry.x, entry.k, &mut v) },
            PrwStatus::Ok
        );
        assert_eq!(v.to_bits(), entry.prob.to_bits());
        assert_eq!(
            unsafe { prw_pmf_log_prob(pmf, entry.x, entry.k, &mut v) },
            PrwStatus::Ok
        );
        assert_eq!(v.to_bits(), entry.ln_prob.to_bits());
    }

    assert_eq!(unsafe { prw_pmf_total_mass(pmf, &mut v) }, PrwStatus::Ok);
    assert!((v - 1.0).abs() < 1e-12);
    assert_eq!(unsafe { prw_pmf_mean_x(pmf, &mut v) }, PrwStatus::Ok);
    assert_eq!(v, reference.mean_x());
    assert_eq!(unsafe { prw_pmf_mean_k(pmf, &mut v) }, PrwStatus::Ok);
    assert_eq!(v, reference.mean_k());

    unsafe { prw_pmf_free(pmf) };
    unsafe { prw_params_free(params) };
}

#[test]
fn thermo_round_trip_through_the_abi() {
    let params = new_params(0.7, 0.4);
    let (mut force, mut beta, mut gamma_b, mut g) = (0.0, 0.0, 0.0, 0.0);
    assert_eq!(
        unsafe { prw_to_thermo(params, 5, &mut force, &mut beta, &mut gamma_b, &mut g) },
        PrwStatus::Ok
    );
    let mut back: *mut PrwParams = std::ptr::null_mut();
    assert_eq!(
        unsafe { prw_from_thermo(beta, force, &mut back) },
        PrwStatus::Ok
    );
    let (mut er, mut el) = (0.0, 0.0);
    unsafe { prw_params_get(back, &mut er, &mut el) };
    assert!((er - 0.7).abs() < 1e-12);
    assert!((el - 0.4).abs() < 1e-12);
    unsafe { prw_params_free(back) };
    unsafe { prw_params_free(params) };

    // far outside the representable family
    let mut none: *mut PrwParams = std::ptr::null_mut();
    assert_eq!(
        unsafe { prw_from_thermo(-2.0, 25.0, &mut none) },
        PrwStatus::NoSolution
    );
}

#[test]
fn estimation_through_the_abi() {
    let (mut er, mut el) = (0.0, 0.0);
    assert_eq!(
        unsafe { prw_estimate(0.5, 0.375, &mut er, &mut el) },
        PrwStatus::Ok
    );
    assert!((er - 0.75).abs() < 1e-15);
    assert!((el - 0.25).abs() < 1e-15);

    assert_eq!(
        unsafe { prw_estimate(0.5, 0.7, &mut er, &mut el) },
        PrwStatus::Inadmissible
    );
    assert_eq!(
        unsafe { prw_estimate(0.0, 0.0, &mut er, &mut el) },
        PrwStatus::Inadmissible
    );
}

#[test]
fn simulation_through_the_abi_is_deterministic() {
    let params = new_params(0.7, 0.4);
    let walks = 512usize;
    let mut sigma0 = vec![0i8; walks];
    let mut x = vec![0i64; walks];
    let mut k = vec![0u32; walks];
    let status = unsafe {
        prw_simulate(
            params,
            50,
            walks as u64,
            1234,
            PrwSigma0Mode::Stationary,
            sigma0.as_mut_ptr(),
            x.as_mut_ptr(),
            k.as_mut_ptr(),
        )
    };
    assert_eq!(status, PrwStatus::Ok);

    // byte-identical to the library with the same config
    let config = prwalk::SimConfig {
        n: 50,
        num_walks: walks as u64,
        seed: 1234,
        params: prwalk::ModelParams::new(0.7, 0.4).unwrap(),
        sigma0_mode: prwalk::Sigma0Mode::Stationary,
    };
    for (i, o) in prwalk::simulate(&config).iter().enumerate() {
        assert_eq!(i64::from(sigma0[i]), o.sigma0.signum());
        assert_eq!(x[i], o.x);
        assert_eq!(k[i], o.k);
    }

    assert_eq!(
        unsafe {
            prw_simulate(
                params,
                50,
                walks as u64,
                1234,
                PrwSigma0Mode::Stationary,
                std::ptr::null_mut(),
                x.as_mut_ptr(),
                k.as_mut_ptr(),
            )
        },
        PrwStatus::NullPointer
    );
    unsafe { prw_params_free(params) };
}

#[test]
fn status_messages_are_c_strings() {
    for status in [
        PrwStatus::Ok,
        PrwStatus::NullPointer,
        PrwStatus::InvalidParameter,
        PrwStatus::OffSupport,
        PrwStatus::Inadmissible,
        PrwStatus::NoSolution,
        PrwStatus::TooLarge,
        PrwStatus::Internal,
    ] {
        let ptr = prw_status_message(status);
        assert!(!ptr.is_null());
        let text = unsafe { std::ffi::CStr::from_ptr(ptr) }.to_str().unwrap();
        assert!(!text.is_empty());
    }
}
