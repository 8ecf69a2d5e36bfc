import { runFigureScript } from './cli';
import { renderEigenSpectrum } from './figures';

runFigureScript('plot_eigen', renderEigenSpectrum);
