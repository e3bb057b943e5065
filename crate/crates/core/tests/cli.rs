use std::fs;
use std::path::Path;

use bubbler::experiment::cli::cli_main;
use bubbler::raster::{read_image, write_image};
use bubbler::{Image, Rgb};

fn run(args: &[&str]) -> i32 {
    cli_main(std::iter::once("bubbler").chain(args.iter().copied()))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn measure_uniform_white() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("white.ppm");
    write_image(&Image::new(32, 32, Rgb::WHITE).unwrap(), &img).unwrap();
    let out = dir.path().join("m.csv");
    assert_eq!(
        run(&["measure", s(&img), "--grids", "2,4", "-o", s(&out)]),
        0
    );
    let csv = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "image,g,SYM4,SYM16,BFL");
    let cols: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cols[1], "2;4");
    assert_eq!(cols[2], "1");
    assert_eq!(cols[3], "1");
    assert_eq!(cols[4], "0");
}

#[test]
fn sweep_fig5a_has_21_rows() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig5a.csv");
    let gallery = dir.path().join("g");
    assert_eq!(
        run(&[
            "sweep",
            "--preset",
            "fig5a",
            "-o",
            s(&out),
            "--gallery",
            s(&gallery)
        ]),
        0
    );
    let csv = fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("sigma,measure,g,mean,std"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 21);
    assert!(rows.iter().all(|r| r.contains(",SYM4,2,")));
    assert!(gallery.join("fig5a_a_sigma0.00.ppm").exists());
    assert!(gallery.join("fig5a_u_sigma1.00.ppm").exists());
}

#[test]
fn sweep_from_config_file_with_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("s.conf");
    let out = dir.path().join("s.csv");
    fs::write(
        &conf,
        format!(
            "sigma_count = 3\nimages_per_sigma = 2\ngrids = 4\nbfl = true\noutput = {}\n",
            out.display()
        ),
    )
    .unwrap();
    assert_eq!(
        run(&[
            "sweep",
            s(&conf),
            "--isometry",
            "rotation",
            "--set",
            "rotation_order=3",
            "--sequential"
        ]),
        0
    );
    let csv = fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 2);
    assert!(csv.contains("BFL,,"));
}

#[test]
fn generate_writes_image_and_pattern() {
    let dir = tempfile::tempdir().unwrap();
    let img = dir.path().join("p.ppm");
    let pat = dir.path().join("p.txt");
    let args = [
        "generate",
        "--seed",
        "5",
        "--sigma",
        "0.5",
        "-o",
        s(&img),
        "--pattern",
        s(&pat),
    ];
    assert_eq!(run(&args), 0);
    let first = read_image(&img).unwrap();
    assert_eq!((first.width(), first.height()), (256, 256));
    let text = fs::read_to_string(&pat).unwrap();
    assert!(text.starts_with("# bubbler pattern v1"));
    let p = bubbler::pattern::from_text(&text).unwrap();
    assert!(p.visible_count() < p.pellet_count());

    assert_eq!(run(&args), 0);
    assert_eq!(read_image(&img).unwrap(), first);
}

#[test]
fn gallery_writes_named_panels() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run(&["gallery", "--preset", "fig3", "--out", s(dir.path())]),
        0
    );
    let mut names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names.len(), 6);
    assert_eq!(names[0], "fig3_a_sigma0.00.ppm");
    assert_eq!(names[5], "fig3_f_sigma0.95.ppm");
}

#[test]
fn bad_invocations_fail() {
    assert_ne!(run(&["--frobnicate"]), 0);
    assert_ne!(run(&["sweep", "--bogus"]), 0);
    assert_ne!(run(&[]), 0);
    assert_ne!(run(&["measure", "/nonexistent/x.ppm"]), 0);
    assert_ne!(run(&["sweep", "/nonexistent/x.conf"]), 0);
    assert_ne!(run(&["sweep", "--preset", "fig9z"]), 0);
    assert_ne!(
        run(&["sweep", "--preset", "fig5a", "--set", "colour=red"]),
        0
    );
    assert_ne!(run(&["gallery", "--preset", "fig2"]), 0);
    assert_eq!(run(&["--help"]), 0);
}

#[test]
fn measure_rejects_malformed_image() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ppm");
    fs::write(&bad, b"P6\n4 4\n255\nabc").unwrap();
    assert_ne!(run(&["measure", s(&bad)]), 0);
}
