// Usage: node dist/cli.js --metrics results/metrics.csv --out results
//        [--band 10] [--format svg|png]

import { parseArgs } from "node:util";

import { CsvError } from "./csv";
import { renderReport } from "./render";

async function main(): Promise<number> {
  let values;
  try {
    values = parseArgs({
      options: {
        metrics: { type: "string" },
        out: { type: "string" },
        band: { type: "string", default: "10" },
        format: { type: "string", default: "svg" },
      },
    }).values;
  } catch (err) {
    console.error(`reporter: ${(err as Error).message}`);
    return 1;
  }
  if (!values.metrics || !values.out) {
    console.error("usage: reporter --metrics <metrics.csv> --out <dir> [--band 10] [--format svg|png]");
    return 1;
  }
  const band = Number(values.band);
  if (!Number.isFinite(band) || band <= 0) {
    console.error(`reporter: --band must be a positive number, got ${values.band}`);
    return 1;
  }
  if (values.format !== "svg" && values.format !== "png") {
    console.error(`reporter: --format must be svg or png, got ${values.format}`);
    return 1;
  }
  try {
    const written = await renderReport({
      metricsCsv: values.metrics,
      outDir: values.out,
      targetRelErrorPct: band,
      imageFormat: values.format as "svg" | "png",
    });
    for (const file of written) console.log(file);
    return 0;
  } catch (err) {
    console.error(`reporter: ${(err as Error).message}`);
    return err instanceof CsvError ? 1 : 2;
  }
}

main().then((code) => {
  process.exitCode = code;
});
