// Batch entry point: metrics CSV in, one recall chart and one precision
// chart out. The reporter reads nothing but the metrics CSV.

import * as fs from "fs";
import * as path from "path";

import { averageRows, buildPrecisionModel, buildRecallModel, renderSvg } from "./chart";
import { parseMetricsCsv } from "./csv";

export interface ReportSpec {
  metricsCsv: string;
  outDir: string;
  targetRelErrorPct?: number; // band edge used in labels, default 10
  imageFormat?: "svg" | "png";
}

export async function renderReport(spec: ReportSpec): Promise<string[]> {
  const band = spec.targetRelErrorPct ?? 10;
  const format = spec.imageFormat ?? "svg";
  if (format !== "svg" && format !== "png") {
    throw new Error(`unknown image format ${JSON.stringify(format)}; expected svg or png`);
  }
  if (!fs.existsSync(spec.metricsCsv)) {
    throw new Error(`metrics file not found: ${spec.metricsCsv}`);
  }
  const rows = parseMetricsCsv(fs.readFileSync(spec.metricsCsv, "utf-8"), spec.metricsCsv);
  const avg = averageRows(rows);
  if (avg.length === 0) {
    throw new Error(`${spec.metricsCsv}: no average rows (trial=avg); nothing to plot`);
  }

  fs.mkdirSync(spec.outDir, { recursive: true });
  const dataset = path.basename(spec.metricsCsv).replace(/\.[^.]*$/, "");
  const charts = [
    { name: "recall", svg: renderSvg(buildRecallModel(avg)) },
    { name: "precision", svg: renderSvg(buildPrecisionModel(avg, band)) },
  ];

  const written: string[] = [];
  for (const chart of charts) {
    const target = path.join(spec.outDir, `${dataset}_${chart.name}.${format}`);
    if (format === "svg") {
      fs.writeFileSync(target, chart.svg);
    } else {
      // sharp is only needed for rasterization; svg output has no native deps
      const sharp = (await import("sharp")).default;
      fs.writeFileSync(target, await sharp(Buffer.from(chart.svg)).png().toBuffer());
    }
    written.push(target);
  }
  return written;
}
