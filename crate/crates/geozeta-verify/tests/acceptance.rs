//! One PASS/FAIL line per criterion; exits non-zero if any fails.

use geozeta_verify::{criteria, evaluate};

fn main() {
    let all = criteria();
    let mut failed = 0;
    for (i, c) in all.iter().enumerate() {
        let (outcome, elapsed) = evaluate(c);
        match outcome {
            Ok(m) => println!("PASS {:>2} {} [{elapsed:.2?}]: {m}", i + 1, c.name),
            Err(m) => {
                failed += 1;
                println!("FAIL {:>2} {} [{elapsed:.2?}]: {m}", i + 1, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", all.len() - failed, all.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
