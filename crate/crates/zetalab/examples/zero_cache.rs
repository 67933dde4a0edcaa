//! The zero-table cache: first call computes and writes CSV + checksum
//! manifest, the second call validates and loads without recomputation.

use zetalab::characters::from_selector;
use zetalab::cli::ensure_zeros;
use zetalab::Result;

fn main() -> Result<()> {
    let dir = std::env::temp_dir().join("zetalab_zero_cache_example");
    let chi4 = from_selector("4.1")?;

    for pass in 1..=2 {
        println!("pass {pass}:");
        for chi in [None, Some(&chi4)] {
            let entry = ensure_zeros(&dir, chi, 100.0)?;
            println!(
                "  {:>4}: {} ({} ordinates) at {}",
                chi.map_or("zeta".to_string(), |c| c.selector()),
                if entry.hit { "cache hit" } else { "computed" },
                entry.set.len(),
                entry.path.display()
            );
        }
    }

    let manifest = dir.join("zeros_zeta_100.csv.meta");
    println!("\nmanifest sidecar ({}):", manifest.display());
    let text = std::fs::read_to_string(manifest)?;
    for line in text.lines().take(6) {
        println!("  {line}");
    }
    println!("  ...");
    println!("\nany edited line in the CSV now fails its checksum and is reported by line number");
    Ok(())
}
