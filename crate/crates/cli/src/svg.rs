//! Minimal self-contained SVG histogram for the permutation-null plots.

/// Render a histogram of `values` with an observed (solid) and historical
/// (dashed) reference line. Deterministic text output, safe to diff.
pub fn histogram_svg(
    values: &[f64],
    observed: f64,
    historical: f64,
    title: &str,
) -> String {
    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const MARGIN: f64 = 50.0;
    const BINS: usize = 40;

    let lo = values
        .iter()
        .copied()
        .chain([observed, historical])
        .fold(f64::INFINITY, f64::min);
    let hi = values
        .iter()
        .copied()
        .chain([observed, historical])
        .fold(f64::NEG_INFINITY, f64::max);
    let span = (hi - lo).max(1e-9);
    let lo = lo - 0.05 * span;
    let hi = hi + 0.05 * span;
    let width = hi - lo;

    let mut counts = vec![0usize; BINS];
    for &v in values {
        let bin = (((v - lo) / width) * BINS as f64) as usize;
        counts[bin.min(BINS - 1)] += 1;
    }
    let peak = counts.iter().copied().max().unwrap_or(1).max(1) as f64;

    let x = |v: f64| MARGIN + (v - lo) / width * (W - 2.0 * MARGIN);
    let bar_w = (W - 2.0 * MARGIN) / BINS as f64;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">{}</text>\n",
        W / 2.0,
        title
    ));
    for (i, &c) in counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let h = c as f64 / peak * (H - 2.0 * MARGIN);
        svg.push_str(&format!(
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#4878a8\"/>\n",
            MARGIN + i as f64 * bar_w,
            H - MARGIN - h,
            bar_w * 0.92,
            h
        ));
    }
    svg.push_str(&format!(
        "<line x1=\"{0:.2}\" y1=\"{1}\" x2=\"{0:.2}\" y2=\"{2}\" stroke=\"#c03030\" stroke-width=\"2\"/>\n",
        x(observed),
        MARGIN,
        H - MARGIN
    ));
    svg.push_str(&format!(
        "<line x1=\"{0:.2}\" y1=\"{1}\" x2=\"{0:.2}\" y2=\"{2}\" stroke=\"#c03030\" stroke-width=\"2\" stroke-dasharray=\"6,4\"/>\n",
        x(historical),
        MARGIN,
        H - MARGIN
    ));
    svg.push_str(&format!(
        "<line x1=\"{0}\" y1=\"{1:.2}\" x2=\"{2}\" y2=\"{1:.2}\" stroke=\"#222\"/>\n",
        MARGIN,
        H - MARGIN,
        W - MARGIN
    ));
    for frac in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let v = lo + frac * width;
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{:.1}</text>\n",
            x(v),
            H - MARGIN + 18.0,
            v
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
