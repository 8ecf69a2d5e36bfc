import { runFigureScript } from './cli';
import { renderBasisScatter } from './figures';

runFigureScript('plot_basis', renderBasisScatter);
