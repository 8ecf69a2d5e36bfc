/**
 * The five figure renderers, one per CSV kind produced by the simulator.
 *
 * Each takes raw CSV text and returns an SVG string; nothing is ever
 * recomputed here, the CSVs are the single source of truth.
 */

import { numericColumn, parseCsv, requireColumns, stringColumn } from './csv';
import { extent, Frame, logExtent, PALETTE } from './svg';

function groupIndices(keys: string[]): Map<string, number[]> {
  const groups = new Map<string, number[]>();
  keys.forEach((key, i) => {
    const bucket = groups.get(key);
    if (bucket) {
      bucket.push(i);
    } else {
      groups.set(key, [i]);
    }
  });
  return groups;
}

const pick = (values: number[], idx: number[]) => idx.map((i) => values[i]);

/** Orthogonal angle pairs in the elevation-azimuth plane (basis CSV). */
export function renderBasisScatter(csvText: string): string {
  const table = parseCsv(csvText);
  const cols = requireColumns(table, ['index', 'azimuth_rad', 'elevation_rad', 'k', 'l']);
  const az = numericColumn(table, cols, 'azimuth_rad');
  const el = numericColumn(table, cols, 'elevation_rad');

  const frame = new Frame(extent(el), extent(az), {
    title: `Orthogonal basis directions (${az.length} points)`,
    xLabel: 'elevation [rad]',
    yLabel: 'azimuth [rad]',
  });
  // one guide line per elevation, markers on top
  for (const [, idx] of groupIndices(el.map(String))) {
    const e = el[idx[0]];
    frame.polyline([e, e], [Math.min(...az), Math.max(...az)], '#b0c4de');
  }
  el.forEach((e, i) => frame.marker(e, az[i], PALETTE[1]));
  return frame.render();
}

/** Subspace dimension ratio vs array size, one curve per spacing (dof CSV). */
export function renderDofRatio(csvText: string): string {
  const table = parseCsv(csvText);
  const cols = requireColumns(table, ['m', 'd', 'eta', 'eta_over_m', 'dof_approx_over_m']);
  const m = numericColumn(table, cols, 'm');
  const d = stringColumn(table, cols, 'd');
  const ratio = numericColumn(table, cols, 'eta_over_m');
  const approx = numericColumn(table, cols, 'dof_approx_over_m');

  const frame = new Frame(extent(m), extent([...ratio, ...approx, 0]), {
    title: 'Subspace dimension ratio eta/M',
    xLabel: 'array side length M_H = M_V',
    yLabel: 'eta / M',
  });
  let c = 0;
  for (const [spacing, idx] of groupIndices(d)) {
    const color = PALETTE[c % PALETTE.length];
    const order = [...idx].sort((a, b) => m[a] - m[b]);
    frame.polyline(pick(m, order), pick(ratio, order), color);
    frame.polyline(pick(m, order), pick(approx, order), color, true);
    pick(m, order).forEach((x, i) => frame.marker(x, pick(ratio, order)[i], color, 2.5));
    frame.legend(`d = ${spacing} (dashed: pi d^2)`, color);
    c += 1;
  }
  return frame.render();
}

/** Descending correlation eigenvalues with the dimension marker (eigen CSV). */
export function renderEigenSpectrum(csvText: string): string {
  const table = parseCsv(csvText);
  const cols = requireColumns(table, ['label', 'index', 'eigenvalue', 'eta']);
  const labels = stringColumn(table, cols, 'label');
  const index = numericColumn(table, cols, 'index');
  const value = numericColumn(table, cols, 'eigenvalue');
  const eta = numericColumn(table, cols, 'eta');

  const positive = value.filter((v) => v > 0);
  const floor = Math.max(Math.min(...positive), Math.max(...positive) * 1e-12);
  const clipped = value.map((v) => Math.max(v, floor));
  const frame = new Frame(extent(index), [floor, Math.max(...positive) * 1.5], {
    title: 'Correlation eigenvalues (descending)',
    xLabel: 'eigenvalue index',
    yLabel: 'eigenvalue',
    logY: true,
  });
  let c = 0;
  for (const [label, idx] of groupIndices(labels)) {
    const color = PALETTE[c % PALETTE.length];
    const order = [...idx].sort((a, b) => index[a] - index[b]);
    frame.polyline(pick(index, order), pick(clipped, order), color);
    const mark = order.find((i) => index[i] === eta[i]);
    if (mark !== undefined) {
      frame.star(index[mark], clipped[mark], color);
    }
    frame.legend(`${label} (star: eta = ${eta[idx[0]]})`, color);
    c += 1;
  }
  return frame.render();
}

function renderSweep(
  csvText: string,
  metric: string,
  title: string,
  yLabel: string,
  logY: boolean,
): string {
  const table = parseCsv(csvText);
  const cols = requireColumns(table, ['rho_dbm', 'method', 'metric', 'mean', 'std', 'trials']);
  const rho = numericColumn(table, cols, 'rho_dbm');
  const method = stringColumn(table, cols, 'method');
  const metricCol = stringColumn(table, cols, 'metric');
  const mean = numericColumn(table, cols, 'mean');

  const keep = metricCol
    .map((name, i) => (name === metric ? i : -1))
    .filter((i) => i >= 0);
  if (keep.length === 0) {
    throw new Error(`no rows with metric ${metric}`);
  }
  const yExtent = logY ? logExtent(pick(mean, keep)) : extent(pick(mean, keep));
  const frame = new Frame(extent(pick(rho, keep)), yExtent, {
    title,
    xLabel: 'pilot transmit power [dBm]',
    yLabel,
    logY,
  });
  let c = 0;
  for (const [name, idx] of groupIndices(keep.map((i) => method[i]))) {
    const rows = idx.map((j) => keep[j]).sort((a, b) => rho[a] - rho[b]);
    const color = PALETTE[c % PALETTE.length];
    frame.polyline(pick(rho, rows), pick(mean, rows), color);
    pick(rho, rows).forEach((x, i) => frame.marker(x, pick(mean, rows)[i], color, 2.5));
    frame.legend(name, color);
    c += 1;
  }
  return frame.render();
}

/** Estimation NMSE vs pilot power, log scale (nmse sweep CSV). */
export function renderNmseSweep(csvText: string): string {
  return renderSweep(csvText, 'nmse', 'Channel estimation NMSE', 'NMSE', true);
}

/** Achieved data SNR vs pilot power (snr sweep CSV). */
export function renderSnrSweep(csvText: string): string {
  return renderSweep(csvText, 'snr_db', 'Average data-transmission SNR', 'SNR [dB]', false);
}
