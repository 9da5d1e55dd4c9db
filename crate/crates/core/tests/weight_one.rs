use eaq_turbo::channel::ChannelModel;
use eaq_turbo::data::bundled;
use eaq_turbo::decoder::{judge, turbo_decode, DecoderConfig};
use eaq_turbo::turbo::TurboCode;
use eaq_turbo::{Pauli, PauliOperator};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sweep(seed: u64, p: f64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code = TurboCode::build(bundled("pto1rea").unwrap(), bundled("pto1rea").unwrap(), 3, &mut rng).unwrap();
    let ch = ChannelModel::depolarizing(p).unwrap();
    let n = code.physical_len();
    let mut ok = 0;
    for q in 0..n {
        for pa in [Pauli::X, Pauli::Y, Pauli::Z] {
            let inv = code.invert(&PauliOperator::single(n, q, pa)).unwrap();
            let r = turbo_decode(&code, &inv.syndrome, &ch, DecoderConfig::default()).unwrap();
            ok += judge(&r, &inv.labels) as usize;
        }
    }
    (ok, 3 * n)
}

#[test]
fn every_weight_one_error_is_corrected() {
    for seed in 0..5 {
        let (ok, total) = sweep(seed, 0.05);
        assert_eq!(ok, total, "interleaver seed {seed}");
    }
}
