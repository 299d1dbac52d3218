// Scratch benchmark for training convergence; not part of the deliverable.
use faithaudit_core::datasets::{gen_bacolorgv, BaColorGvConfig, SplitId};
use faithaudit_core::graph::Graph;
use faithaudit_core::models::eval::{accuracy, eval_f1_designated, DesignatedExplanation};
use faithaudit_core::models::trainable::{
    train_attack, train_natural_smgnn, TrainHp, TrainableModel, TrainableParams,
};
use faithaudit_core::models::SeGnn;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mode = args.get(1).map(|s| s.as_str()).unwrap_or("attack");
    let lr: f64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(0.05);
    let epochs: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let seed: u64 = args.get(4).and_then(|s| s.parse().ok()).unwrap_or(1);

    let t0 = Instant::now();
    let ds = gen_bacolorgv(&BaColorGvConfig::default()).unwrap();
    println!("dataset generated in {:?}", t0.elapsed());

    let train: Vec<(&Graph, usize)> = ds.split_graphs(SplitId::Train);
    let test: Vec<(&Graph, usize)> = ds.split_graphs(SplitId::Test);
    let hp = TrainHp {
        lr,
        max_epochs: epochs,
        ..Default::default()
    };
    let designated = DesignatedExplanation::green_violet();
    let init = TrainableParams::init(hp.hidden, seed);

    let t1 = Instant::now();
    let outcome = match mode {
        "attack" => train_attack(init, &train, &designated, &hp).unwrap(),
        "natural" => train_natural_smgnn(init, &train, &hp).unwrap(),
        other => panic!("unknown mode {other}"),
    };
    let elapsed = t1.elapsed();
    println!(
        "mode={mode} lr={lr} seed={seed}: epochs={} loss={:.5} clf={:.5} train_acc={:.4} in {:?} ({:.0} ms/epoch)",
        outcome.stats.epochs_run,
        outcome.stats.final_loss,
        outcome.stats.final_clf_loss,
        outcome.stats.final_train_acc,
        elapsed,
        elapsed.as_millis() as f64 / outcome.stats.epochs_run as f64,
    );

    let model = TrainableModel::new(outcome.params);
    let acc = accuracy(&model, &test);
    let f1 = eval_f1_designated(&model, &test, &designated);
    let mass: f64 = test
        .iter()
        .map(|(g, _)| model.extract(g).mass())
        .sum::<f64>()
        / test.len() as f64;
    println!("test acc={acc:.4} designated_f1={f1:?} mean score mass={mass:.4}");
}
