import { runFigureScript } from './cli';
import { renderNmseSweep } from './figures';

runFigureScript('plot_nmse', renderNmseSweep);
