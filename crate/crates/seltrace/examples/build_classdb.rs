//! Builds a class database and writes it to disk.
//!
//! Usage: `cargo run --release --example build_classdb -- <tmax> <prec> <out-path>`

use std::path::PathBuf;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.len() != 4 {
        eprintln!("usage: build_classdb <tmax> <prec> <out-path>");
        std::process::exit(64);
    }
    let tmax: u64 = args[1].parse().expect("tmax must be an integer");
    let prec: u32 = args[2].parse().expect("prec must be an integer");
    let out = PathBuf::from(&args[3]);

    let started = std::time::Instant::now();
    let db = seltrace::arithdata::db_build_with_progress(tmax, prec, |t| {
        if t % 500 == 0 {
            eprintln!(
                "t = {t} / {tmax}  ({:.1}s elapsed)",
                started.elapsed().as_secs_f64()
            );
        }
    })
    .expect("database build failed");
    seltrace::arithdata::db_write(&db, &out).expect("database write failed");
    eprintln!(
        "wrote {} entries (tmax = {tmax}) to {} in {:.1}s",
        db.entries.len(),
        out.display(),
        started.elapsed().as_secs_f64()
    );
}
