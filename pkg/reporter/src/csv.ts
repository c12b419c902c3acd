// Parsing for the metrics CSV emitted by the experiment harness. Fields never
// contain commas or quotes, so a plain split is enough; anything off-schema
// fails with a file:line diagnostic.

export const METRICS_HEADER = [
  "method",
  "rho",
  "trial",
  "num_results",
  "frac_within_target",
  "vacuous",
  "mean_rel_error_pct",
  "median_rel_error_pct",
  "runtime_ms",
] as const;

export interface MetricsRow {
  method: string;
  rho: number;
  trial: string; // "0", "1", ... or "avg"
  numResults: number;
  fracWithinTarget: number;
  vacuous: boolean;
  meanRelErrorPct: number;
  medianRelErrorPct: number;
  runtimeMs: number;
}

export class CsvError extends Error {}

function fail(file: string, line: number, message: string): never {
  throw new CsvError(`${file}:${line}: ${message}`);
}

function num(raw: string, file: string, line: number, column: string): number {
  const value = Number(raw);
  if (raw.trim() === "" || !Number.isFinite(value)) {
    fail(file, line, `column ${column}: expected a number, got ${JSON.stringify(raw)}`);
  }
  return value;
}

export function parseMetricsCsv(text: string, file: string): MetricsRow[] {
  const lines = text.split(/\r?\n/);
  while (lines.length > 0 && lines[lines.length - 1] === "") lines.pop();
  if (lines.length === 0) fail(file, 1, "empty file");
  if (lines[0] !== METRICS_HEADER.join(",")) {
    fail(file, 1, `expected header ${METRICS_HEADER.join(",")}`);
  }
  const rows: MetricsRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const lineNo = i + 1;
    const parts = lines[i].split(",");
    if (parts.length !== METRICS_HEADER.length) {
      fail(file, lineNo, `expected ${METRICS_HEADER.length} fields, got ${parts.length}`);
    }
    const [method, rho, trial, numResults, frac, vacuous, mean, median, runtime] = parts;
    if (vacuous !== "true" && vacuous !== "false") {
      fail(file, lineNo, `column vacuous: expected true/false, got ${JSON.stringify(vacuous)}`);
    }
    rows.push({
      method,
      rho: num(rho, file, lineNo, "rho"),
      trial,
      numResults: num(numResults, file, lineNo, "num_results"),
      fracWithinTarget: num(frac, file, lineNo, "frac_within_target"),
      vacuous: vacuous === "true",
      meanRelErrorPct: num(mean, file, lineNo, "mean_rel_error_pct"),
      medianRelErrorPct: num(median, file, lineNo, "median_rel_error_pct"),
      runtimeMs: num(runtime, file, lineNo, "runtime_ms"),
    });
  }
  return rows;
}
