import { runFigureScript } from './cli';
import { renderSnrSweep } from './figures';

runFigureScript('plot_snr', renderSnrSweep);
