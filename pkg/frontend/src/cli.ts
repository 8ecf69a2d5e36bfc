/** Shared --in/--out handling for the figure scripts. */

import { readFileSync, writeFileSync } from 'fs';

export function runFigureScript(name: string, render: (csv: string) => string): void {
  const args = process.argv.slice(2);
  const flags = new Map<string, string>();
  for (let i = 0; i < args.length; i += 2) {
    if (!args[i].startsWith('--') || i + 1 >= args.length) {
      process.stderr.write(`usage: ${name} --in <csv> --out <svg>\n`);
      process.exit(2);
    }
    flags.set(args[i], args[i + 1]);
  }
  const input = flags.get('--in');
  const output = flags.get('--out');
  if (!input || !output) {
    process.stderr.write(`usage: ${name} --in <csv> --out <svg>\n`);
    process.exit(2);
  }

  let csv: string;
  try {
    csv = readFileSync(input, 'utf8');
  } catch (err) {
    process.stderr.write(`${name}: cannot read ${input}: ${(err as Error).message}\n`);
    process.exit(1);
  }
  try {
    // render fully before touching the output path, so failures leave no file
    const svg = render(csv!);
    writeFileSync(output, svg);
  } catch (err) {
    process.stderr.write(`${name}: ${(err as Error).message}\n`);
    process.exit(1);
  }
  process.stdout.write(`${name}: wrote ${output}\n`);
}
