//! Round trip of datasets and models through their file formats, including
//! a model that carries its own feature scaling.
//!
//! cargo run --release --example model_files

use lwa::data::{
    apply_normalizer, fit_normalizer, generate_synthetic, load_csv, load_model, model_to_string, save_csv, save_model,
    Model, SavedModel, SynthSpec,
};
use lwa::solvers::train_svm;

fn main() -> lwa::Result<()> {
    let dir = std::env::temp_dir().join("lwa-model-files");
    std::fs::create_dir_all(&dir).map_err(|e| lwa::Error::io(&dir, e))?;

    let data = generate_synthetic(&SynthSpec::two_blobs(10, 3, 4.0, 2))?;
    save_csv(&data, dir.join("data.csv"))?;
    assert_eq!(load_csv(dir.join("data.csv"))?, data);

    let scaling = fit_normalizer(&data)?;
    let svm = train_svm(&apply_normalizer(&scaling, &data)?, 1e-2, 20_000, 0)?;
    let saved = SavedModel::new(Model::Svm(svm)).with_normalizer(scaling);
    save_model(&saved, dir.join("svm.json"))?;
    let loaded = load_model(dir.join("svm.json"))?;

    for e in data.iter().take(3) {
        let (a, b) = (saved.predict_raw(&e.x)?, loaded.predict_raw(&e.x)?);
        assert_eq!(a, b);
        println!("truth {} -> {:?}", e.y, b.label());
    }
    println!("{}", model_to_string(&loaded)?);
    Ok(())
}
