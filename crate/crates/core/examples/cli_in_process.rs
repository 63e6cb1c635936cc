//! Drives the `ppclab` command line in process, as the binary would.
//!
//! ```text
//! cargo run --example cli_in_process
//! ```

pub fn run_example() -> ppclab::Result<()> {
    let calls: [&[&str]; 3] = [
        &["ppc", "--spec", "kronecker:golden", "--n", "1000", "--s", "0.5,1,2"],
        &["disc", "--spec", "vdc:2", "--n", "512", "--mode", "exact1d_extreme"],
        &["kernel", "--lemma", "remark22", "--r", "1..4", "--eps", "0.2"],
    ];
    for call in calls {
        let argv: Vec<String> = call.iter().map(|s| s.to_string()).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = ppclab::cli::run(&argv, &mut out, &mut err);
        println!("$ ppclab {}  -> exit {code}", call.join(" "));
        print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
        assert_eq!(code, 0);
    }

    let argv: Vec<String> = ["ppc", "--spec", "vdc:2", "--n", "10", "--colour", "red"].map(String::from).to_vec();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = ppclab::cli::run(&argv, &mut out, &mut err);
    print!("unknown key -> exit {code}: {}", String::from_utf8_lossy(&err));
    Ok(())
}

#[allow(dead_code)]
fn main() -> ppclab::Result<()> {
    run_example()
}
