//! Regenerate a published-figure dataset: CSV plus an SVG plot per panel,
//! written to ./figures.  Pass panel ids as arguments (default: 2a 8a 10c).

use gravcat::sweep::{emit_csv, emit_svg, figure_preset, run_figure, SvgStyle};

fn main() -> Result<(), gravcat::GravcatError> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let ids: Vec<&str> = if args.is_empty() {
        vec!["2a", "8a", "10c"]
    } else {
        args.iter().map(String::as_str).collect()
    };
    let out_dir = std::path::Path::new("figures");
    std::fs::create_dir_all(out_dir)?;
    for id in ids {
        let preset = figure_preset(id)?;
        for (name, table) in run_figure(&preset)? {
            let csv = out_dir.join(format!("{name}.csv"));
            let svg = out_dir.join(format!("{name}.svg"));
            emit_csv(&table, &csv)?;
            let style = SvgStyle { title: format!("figure {name}"), ..Default::default() };
            emit_svg(&table, &style, &svg)?;
            println!("wrote {} and {}", csv.display(), svg.display());
        }
    }
    Ok(())
}
