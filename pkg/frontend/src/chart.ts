export interface ChartSeries {
  label: string;
  latencies: number[];
  highlighted?: boolean;
}

export interface ChartOptions {
  width?: number;
  height?: number;
  padding?: number;
  /** horizontal guide line, e.g. the acceptance threshold */
  guide?: number;
}

/**
 * Trajectory overlay as an SVG string: x = key position index, y = latency in
 * ms, one polyline per sample, the highlighted series (the representative)
 * drawn on top in red.
 */
export function trajectoryChartSvg(series: ChartSeries[], opts: ChartOptions = {}): string {
  const width = opts.width ?? 560;
  const height = opts.height ?? 280;
  const pad = opts.padding ?? 36;
  const all = series.flatMap((s) => s.latencies);
  if (all.length === 0) {
    return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}"></svg>`;
  }
  const maxLen = Math.max(...series.map((s) => s.latencies.length));
  const yLo = Math.min(0, ...all, opts.guide ?? 0);
  const yHi = Math.max(...all, opts.guide ?? 0) * 1.05 || 1;
  const x = (i: number) =>
    pad + (maxLen <= 1 ? 0 : (i / (maxLen - 1)) * (width - 2 * pad));
  const y = (v: number) =>
    height - pad - ((v - yLo) / (yHi - yLo)) * (height - 2 * pad);

  const lines: string[] = [];
  const sorted = [...series].sort((a, b) => Number(!!a.highlighted) - Number(!!b.highlighted));
  for (const s of sorted) {
    const pts = s.latencies.map((v, i) => `${x(i).toFixed(1)},${y(v).toFixed(1)}`).join(" ");
    const color = s.highlighted ? "#c0392b" : "#7f8c8d";
    const sw = s.highlighted ? 2.5 : 1.2;
    lines.push(
      `<polyline data-label="${s.label}" fill="none" stroke="${color}" ` +
        `stroke-width="${sw}" points="${pts}"/>`,
    );
  }
  if (opts.guide !== undefined) {
    const gy = y(opts.guide).toFixed(1);
    lines.push(
      `<line data-role="guide" x1="${pad}" y1="${gy}" x2="${width - pad}" y2="${gy}" ` +
        `stroke="#2980b9" stroke-dasharray="4 3"/>`,
    );
  }
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">` +
    `<rect width="${width}" height="${height}" fill="white"/>` +
    lines.join("") +
    `</svg>`
  );
}

/** Accept/reject gauge: dissimilarity as a fraction of the threshold. */
export function gaugeSvg(dissimilarity: number | null, threshold: number, width = 280): string {
  const height = 36;
  const frac = dissimilarity === null || threshold <= 0
    ? 1
    : Math.min(dissimilarity / threshold, 2) / 2;
  const mark = 8 + frac * (width - 16);
  const mid = 8 + 0.5 * (width - 16); // the threshold sits at half scale
  const color = dissimilarity !== null && dissimilarity <= threshold ? "#27ae60" : "#c0392b";
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}">` +
    `<rect x="8" y="14" width="${width - 16}" height="8" fill="#ecf0f1" rx="4"/>` +
    `<line x1="${mid}" y1="6" x2="${mid}" y2="30" stroke="#2980b9"/>` +
    `<circle data-role="needle" cx="${mark.toFixed(1)}" cy="18" r="6" fill="${color}"/>` +
    `</svg>`
  );
}
