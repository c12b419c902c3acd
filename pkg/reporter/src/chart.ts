// Chart model and SVG rendering. Bars plot the CSV average rows verbatim (no
// re-aggregation); every emitted rect carries its value in a data attribute
// so tests and downstream tools can read back exactly what was plotted.

import { MetricsRow } from "./csv";

export interface BarSegment {
  label: string;
  value: number;
}

export interface Bar {
  method: string;
  total: number;
  segments: BarSegment[];
  vacuous: boolean;
}

export interface Cluster {
  rho: number;
  bars: Bar[];
}

export interface ChartModel {
  kind: "recall" | "precision";
  title: string;
  yLabel: string;
  methods: string[];
  clusters: Cluster[];
  segmentLabels: string[];
}

const PALETTE = ["#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2", "#b279a2"];
const BEYOND_SHADE = "#d9d9d9";

function uniqueInOrder(values: string[]): string[] {
  return values.filter((v, i) => values.indexOf(v) === i);
}

export function averageRows(rows: MetricsRow[]): MetricsRow[] {
  return rows.filter((row) => row.trial === "avg");
}

function clustersOf(avg: MetricsRow[], toBar: (row: MetricsRow) => Bar): Cluster[] {
  const methods = uniqueInOrder(avg.map((r) => r.method));
  const rhos = [...new Set(avg.map((r) => r.rho))].sort((a, b) => a - b);
  return rhos.map((rho) => ({
    rho,
    bars: methods.map((method) => {
      const row = avg.find((r) => r.method === method && r.rho === rho);
      if (!row) {
        // a method missing at this rho plots as an explicit empty bar
        return { method, total: 0, segments: [], vacuous: true };
      }
      return toBar(row);
    }),
  }));
}

export function buildRecallModel(avg: MetricsRow[]): ChartModel {
  return {
    kind: "recall",
    title: "Results returned (average over trials)",
    yLabel: "number of results",
    methods: uniqueInOrder(avg.map((r) => r.method)),
    clusters: clustersOf(avg, (row) => ({
      method: row.method,
      total: row.numResults,
      segments: [{ label: "results", value: row.numResults }],
      vacuous: row.vacuous,
    })),
    segmentLabels: ["results"],
  };
}

export function buildPrecisionModel(avg: MetricsRow[], bandPct: number): ChartModel {
  const within = `within ${bandPct}% error`;
  const beyond = `beyond ${bandPct}% error`;
  return {
    kind: "precision",
    title: `Results within vs beyond the ${bandPct}% relative-error target`,
    yLabel: "number of results",
    methods: uniqueInOrder(avg.map((r) => r.method)),
    clusters: clustersOf(avg, (row) => {
      const withinCount = row.numResults * row.fracWithinTarget;
      return {
        method: row.method,
        total: row.numResults,
        segments: [
          { label: within, value: withinCount },
          { label: beyond, value: row.numResults - withinCount },
        ],
        vacuous: row.vacuous,
      };
    }),
    segmentLabels: [within, beyond],
  };
}

// layout constants
const WIDTH = 720;
const HEIGHT = 420;
const MARGIN = { top: 48, right: 24, bottom: 56, left: 64 };
const LEGEND_ROW = 16;

function niceTicks(max: number, count = 5): number[] {
  if (max <= 0) return [0, 1];
  const rawStep = max / count;
  const power = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const candidates = [1, 2, 2.5, 5, 10].map((m) => m * power);
  const step = candidates.find((c) => c >= rawStep) ?? candidates[candidates.length - 1];
  const ticks: number[] = [];
  for (let t = 0; t <= max + step * 1e-9; t += step) ticks.push(t);
  return ticks;
}

function fmt(value: number): string {
  // stable short formatting for coordinates; data attributes keep full precision
  return Number(value.toFixed(2)).toString();
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

export function renderSvg(model: ChartModel): string {
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const maxTotal = Math.max(0, ...model.clusters.flatMap((c) => c.bars.map((b) => b.total)));
  const ticks = niceTicks(maxTotal);
  const yMax = ticks[ticks.length - 1];
  const y = (v: number) => MARGIN.top + plotH - (yMax === 0 ? 0 : (v / yMax) * plotH);

  const nClusters = model.clusters.length;
  const nBars = Math.max(1, model.methods.length);
  const clusterW = plotW / Math.max(1, nClusters);
  const barW = Math.min(48, (clusterW * 0.8) / nBars);

  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`
  );
  out.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  out.push(
    `<text x="${MARGIN.left}" y="24" font-size="15" font-weight="bold">${esc(model.title)}</text>`
  );

  // y axis, gridlines, labels
  for (const tick of ticks) {
    const ty = y(tick);
    out.push(
      `<line x1="${MARGIN.left}" y1="${fmt(ty)}" x2="${WIDTH - MARGIN.right}" y2="${fmt(ty)}" stroke="#e0e0e0" stroke-width="1"/>`
    );
    out.push(
      `<text x="${MARGIN.left - 8}" y="${fmt(ty + 4)}" font-size="11" text-anchor="end">${fmt(tick)}</text>`
    );
  }
  out.push(
    `<text x="16" y="${MARGIN.top + plotH / 2}" font-size="12" text-anchor="middle" transform="rotate(-90 16 ${MARGIN.top + plotH / 2})">${esc(model.yLabel)}</text>`
  );

  // bars, cluster by cluster
  model.clusters.forEach((cluster, ci) => {
    const clusterX = MARGIN.left + ci * clusterW;
    const groupW = nBars * barW;
    const start = clusterX + (clusterW - groupW) / 2;
    cluster.bars.forEach((bar, bi) => {
      const x = start + bi * barW;
      let top = y(0);
      bar.segments.forEach((segment, si) => {
        const h = (yMax === 0 ? 0 : segment.value / yMax) * plotH;
        top -= h;
        const fill = si === 0 ? PALETTE[bi % PALETTE.length] : BEYOND_SHADE;
        out.push(
          `<rect x="${fmt(x + 1)}" y="${fmt(top)}" width="${fmt(barW - 2)}" height="${fmt(h)}" fill="${fill}" stroke="#555" stroke-width="0.5" data-method="${esc(bar.method)}" data-rho="${cluster.rho}" data-segment="${esc(segment.label)}" data-value="${segment.value}" data-vacuous="${bar.vacuous}"/>`
        );
      });
      if (bar.segments.length === 0) {
        out.push(
          `<rect x="${fmt(x + 1)}" y="${fmt(y(0))}" width="${fmt(barW - 2)}" height="0" fill="none" data-method="${esc(bar.method)}" data-rho="${cluster.rho}" data-segment="empty" data-value="0" data-vacuous="true"/>`
        );
      }
    });
    out.push(
      `<text x="${fmt(clusterX + clusterW / 2)}" y="${HEIGHT - MARGIN.bottom + 20}" font-size="12" text-anchor="middle">rho = ${cluster.rho}</text>`
    );
  });

  // x axis line
  out.push(
    `<line x1="${MARGIN.left}" y1="${fmt(y(0))}" x2="${WIDTH - MARGIN.right}" y2="${fmt(y(0))}" stroke="#333" stroke-width="1"/>`
  );

  // legend: one swatch per method, plus the shaded "beyond" swatch for stacks
  let legendY = MARGIN.top - 14;
  model.methods.forEach((method, i) => {
    const lx = MARGIN.left + i * 150;
    out.push(
      `<rect x="${lx}" y="${legendY - 9}" width="10" height="10" fill="${PALETTE[i % PALETTE.length]}"/>`
    );
    out.push(`<text x="${lx + 14}" y="${legendY}" font-size="11">${esc(method)}</text>`);
  });
  if (model.segmentLabels.length > 1) {
    legendY = HEIGHT - 12;
    out.push(
      `<rect x="${MARGIN.left}" y="${legendY - 9}" width="10" height="10" fill="${BEYOND_SHADE}"/>`
    );
    out.push(
      `<text x="${MARGIN.left + 14}" y="${legendY}" font-size="11">top shaded segment: ${esc(model.segmentLabels[1])}</text>`
    );
  }
  out.push("</svg>");
  return out.join("\n") + "\n";
}
